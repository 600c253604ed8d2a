#include <gtest/gtest.h>

#include "cpc/equivalence.hpp"
#include "cpc/parser.hpp"
#include "cpc/printer.hpp"
#include "support/generators.hpp"

using namespace cpc;
using cpc::testing::Rng;

namespace {

Process Pr(const char* s) { return parse_process(s); }
Name N(const char* s) { return Name::surface(s); }

}  // namespace

TEST(Spec, Cases) {
  Specification s = spec({N("n")}, parse_pattern("n"));
  ASSERT_EQ(s.complementary.kind(), Pattern::Kind::Binding);
  ASSERT_EQ(s.free_expect.size(), 1u);
  EXPECT_EQ(s.free_expect[0], std::make_pair(s.complementary.name(), N("n")));
  EXPECT_TRUE(s.rest_expect.empty());

  s = spec({}, parse_pattern("n"));
  ASSERT_EQ(s.rest_expect.size(), 1u);
  EXPECT_EQ(s.rest_expect[0].second, N("n"));
  EXPECT_TRUE(s.free_expect.empty());

  s = spec({N("a")}, parse_pattern("\\y"));
  EXPECT_EQ(s.complementary, parse_pattern("y"));
  EXPECT_TRUE(s.free_expect.empty() && s.rest_expect.empty());

  s = spec({N("a")}, parse_pattern("#a . \\y"));
  EXPECT_EQ(s.complementary, parse_pattern("#a . y"));
}

TEST(Spec, UnifiesWithOriginal) {
  Rng rng(31);
  auto pool = cpc::testing::names({"a", "b", "c"});
  auto binders = cpc::testing::names({"x", "y"});
  for (int i = 0; i < 500; ++i) {
    Pattern p = cpc::testing::random_wf_pattern(rng, pool, binders, 3);
    NameSet N{Name::surface("a"), Name::surface("b")};
    Specification s = spec(N, p);
    auto u = unify(p, s.complementary);
    ASSERT_TRUE(u) << to_string(p);
    EXPECT_EQ(u->left, Substitution::identity_on(binding_names(p)));
    Substitution expect;
    for (const auto& [x, n] : s.free_expect) expect.set(x, Pattern::variable(n));
    for (const auto& [x, n] : s.rest_expect) expect.set(x, Pattern::variable(n));
    EXPECT_EQ(u->right, expect);
  }
}

TEST(Tests, Check) {
  Reporters r = Reporters::fresh();
  Name x = N("x"), y = N("y"), m = N("m"), n = N("n");
  Process eq = build_check(x, m, y, m, r.w, r);
  // theta(x) = theta(y)
  Process same = subst_proc(Substitution{{x, parse_pattern("a")}, {y, parse_pattern("a")}}, eq);
  Outcome o = explore_outcome(same, r);
  EXPECT_TRUE(o.succeeds());
  EXPECT_EQ(o.min_steps_to_w, 1u);

  Process ne = build_check(x, m, y, n, r.w, r);
  EXPECT_TRUE(explore_outcome(subst_proc(Substitution{{x, parse_pattern("a")}, {y, parse_pattern("a")}}, ne), r)
                  .reaches_f);
  Outcome o2 = explore_outcome(subst_proc(Substitution{{x, parse_pattern("a")}, {y, parse_pattern("b")}}, ne), r);
  EXPECT_TRUE(o2.succeeds());
}

// Independent restatement of the three success conditions for tests.
namespace {

bool expected_success(const NameSet& Nset, const NamePairs& F, const NamePairs& R, const Substitution& theta) {
  for (const auto& [x, n] : F)
    if (!(*theta.get(x) == Pattern::variable(n))) return false;
  for (const auto& [x, n] : R) {
    const Pattern& t = *theta.get(x);
    if (!t.is_atom() || Nset.count(t.name())) return false;
  }
  for (const auto& [x, n] : R)
    for (const auto& [y, m] : R)
      if ((n == m) != (*theta.get(x) == *theta.get(y))) return false;
  return true;
}

}  // namespace

TEST(Tests, ExhaustiveOverSmallPool) {
  auto pool = cpc::testing::names({"a", "b", "c"});
  NameSet Nset{N("a")};
  auto images = communicable_patterns(pool, 1);
  // Two-binder shapes use the atoms plus a few compounds to keep the run short.
  std::vector<Pattern> small(images.begin(), images.begin() + 3);
  small.push_back(parse_pattern("a . b"));
  small.push_back(parse_pattern("b . c"));
  small.push_back(parse_pattern("c . c"));
  Name x = N("x"), y = N("y");
  std::vector<std::pair<NamePairs, NamePairs>> shapes = {
      {{{x, N("a")}}, {}},
      {{}, {{x, N("r")}}},
      {{}, {{x, N("r")}, {y, N("r")}}},
      {{}, {{x, N("r")}, {y, N("s")}}},
      {{{y, N("a")}}, {{x, N("r")}}},
  };
  for (const auto& [F, R] : shapes) {
    Reporters r = Reporters::fresh();
    Process T = build_tests(Nset, F, R, r);
    std::vector<Name> dom;
    for (auto& e : F) dom.push_back(e.first);
    for (auto& e : R) dom.push_back(e.first);
    std::function<void(std::size_t, Substitution)> rec = [&](std::size_t i, Substitution theta) {
      if (i == dom.size()) {
        Outcome o = explore_outcome(subst_proc(theta, T), r);
        ASSERT_TRUE(o.complete);
        bool want = expected_success(Nset, F, R, theta);
        EXPECT_EQ(o.succeeds(), want) << to_string(theta);
        if (want) EXPECT_EQ(o.min_steps_to_w, tests_step_count(F, R)) << to_string(theta);
        return;
      }
      for (const auto& img : dom.size() > 1 ? small : images) {
        Substitution t = theta;
        t.set(dom[i], img);
        rec(i + 1, t);
      }
    };
    rec(0, {});
  }
}

TEST(ReplyContext, CompatibleAndIncompatible) {
  NameSet Nset{N("a"), N("b")};
  Pattern p = parse_pattern("a . \\x . #b");
  Reporters r = Reporters::fresh();
  Process ch = char_proc(Nset, p, r);
  Specification s = spec(Nset, p);
  std::size_t k = tests_step_count(s.free_expect, s.rest_expect);

  Outcome good = explore_outcome(Process::par(ch, Pr("a . \\z . b -> 0")), r);
  EXPECT_TRUE(good.succeeds());
  EXPECT_EQ(good.min_steps_to_w, k + 1);
  EXPECT_FALSE(explore_outcome(Process::par(ch, Pr("#a . \\z . b -> 0")), r).succeeds());
  EXPECT_FALSE(explore_outcome(Process::par(ch, Pr("a . \\z . \\u -> 0")), r).succeeds());
  EXPECT_FALSE(explore_outcome(Process::par(ch, Pr("b . \\z . b -> 0")), r).succeeds());
}

TEST(Bisim, ExampleEquivalences) {
  BisimConfig cfg;
  cfg.depth = 3;
  auto r1 = bounded_bisim(Pr("#n -> 0 | !(n -> 0)"), Pr("!(n -> 0)"), cfg);
  EXPECT_TRUE(r1.bisimilar);
  auto r2 = bounded_bisim(Pr("\\x . \\y -> 0 | !(\\z -> 0)"), Pr("!(\\z -> 0)"), cfg);
  EXPECT_TRUE(r2.bisimilar);
}

TEST(Bisim, ClosingCounterexample) {
  BisimConfig cfg;
  cfg.depth = 3;
  Process Q = Pr("!(\\x -> (m -> 0 | m -> #w -> 0))");
  Process P = Process::par(Pr("\\x -> (x -> 0 | m -> #w -> 0)"), Q);
  auto res = bounded_bisim(P, Q, cfg);
  ASSERT_FALSE(res.bisimilar);
  ASSERT_TRUE(res.witness);
  EXPECT_TRUE(replay_witness(P, Q, *res.witness, cfg)) << to_string(*res.witness);
  EXPECT_FALSE(res.witness->trace.empty());
}

TEST(Bisim, SimpleDistinctions) {
  BisimConfig cfg;
  cfg.depth = 2;
  EXPECT_FALSE(bounded_bisim(Pr("#n -> 0"), Pr("n -> 0"), cfg).bisimilar);
  EXPECT_FALSE(bounded_bisim(Pr("n -> 0"), Pr("#n -> 0"), cfg).bisimilar);
  EXPECT_TRUE(bounded_bisim(Pr("\\x . \\y -> 0"), Pr("\\x . \\y -> 0"), cfg).bisimilar);
  EXPECT_FALSE(bounded_bisim(Pr("a -> 0"), Pr("0"), cfg).bisimilar);
  // ok has no transitions, so the LTS cannot observe it.
  EXPECT_TRUE(bounded_bisim(Pr("a -> ok"), Pr("a -> 0"), cfg).bisimilar);
}

TEST(Bisim, ReflexiveAndSymmetric) {
  Rng rng(33);
  auto pool = cpc::testing::names({"a", "b"});
  BisimConfig cfg;
  cfg.depth = 2;
  for (int i = 0; i < 40; ++i) {
    Process P = cpc::testing::random_process(rng, pool, 5);
    Process Q = cpc::testing::random_process(rng, pool, 5);
    EXPECT_TRUE(bounded_bisim(P, P, cfg).bisimilar) << to_string(P);
    auto pq = bounded_bisim(P, Q, cfg);
    auto qp = bounded_bisim(Q, P, cfg);
    EXPECT_EQ(pq.bisimilar, qp.bisimilar) << to_string(P) << " vs " << to_string(Q);
    if (pq.witness) EXPECT_TRUE(replay_witness(P, Q, *pq.witness, cfg)) << to_string(P) << " vs " << to_string(Q);
  }
}

namespace {

std::size_t check_replies(const WitnessNode& node) {
  std::size_t seen = 0;
  for (const auto& r : node.replies) {
    if (!node.challenge.is_tau()) {
      EXPECT_TRUE(compat({*node.challenge.pattern, node.sigma}, {*r.label.pattern, r.rho}))
          << to_string(node.challenge) << " / " << to_string(r.label);
    }
    ++seen;
    if (r.refutation) seen += check_replies(*r.refutation);
  }
  return seen;
}

TEST(Bisim, WitnessRepliesAreCompatible) {
  BisimConfig cfg;
  cfg.depth = 3;
  Process Q = Pr("!(\\x -> (m -> 0 | m -> #w -> 0))");
  Process P = Process::par(Pr("\\x -> (x -> 0 | m -> #w -> 0)"), Q);
  auto res = bounded_bisim(P, Q, cfg);
  ASSERT_TRUE(res.witness);
  EXPECT_GT(check_replies(*res.witness->root), 0u);

  Rng rng(34);
  auto pool = cpc::testing::names({"a", "b"});
  cfg.depth = 2;
  for (int i = 0; i < 40; ++i) {
    Process A = cpc::testing::random_process(rng, pool, 5);
    Process B = cpc::testing::random_process(rng, pool, 5);
    auto r = bounded_bisim(A, B, cfg);
    if (r.witness) check_replies(*r.witness->root);
  }
}

TEST(Bisim, GeneralLawInstances) {
  // p -> P' | !(q -> Q') against !(q -> Q') where (p, id) is compatible with
  // q. Continuations avoid the binders, so rho Q' = Q' and P' = Q' makes the
  // premise hold trivially.
  Rng rng(35);
  auto pool = cpc::testing::names({"a", "b"});
  BisimConfig cfg;
  cfg.depth = 2;
  for (int i = 0; i < 30; ++i) {
    Pattern p = cpc::testing::random_wf_pattern(rng, pool, cpc::testing::names({"x", "y"}), 2);
    int counter = 0;
    Pattern q = cpc::testing::random_generalization(rng, p, counter);
    ASSERT_TRUE(compat_reply(p, Substitution::identity_on(binding_names(p)), q));
    Process cont = cpc::testing::random_process(rng, pool, 3);
    Process Q = Process::replicate(Process::case_of(q, cont));
    Process P = Process::par(Process::case_of(p, cont), Q);
    EXPECT_TRUE(bounded_bisim(P, Q, cfg).bisimilar) << to_string(P);
  }
}

}  // namespace
