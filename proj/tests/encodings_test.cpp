#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "cpc/congruence.hpp"
#include "cpc/encoding_check.hpp"
#include "cpc/linda.hpp"
#include "cpc/parser.hpp"
#include "cpc/printer.hpp"
#include "cpc/reduction.hpp"
#include "cpc/spi.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace cpc;
using cpc::testing::Rng;

namespace {

Name N(const char* s) { return Name::surface(s); }
linda::LindaProcess L(const char* s) { return linda::parse_linda(s); }
spi::SpiProcess S(const char* s) { return spi::parse_spi(s); }
spi::SpiTerm T(const char* s) { return spi::parse_spi_term(s); }

std::set<std::string> keys_of(const std::vector<Process>& ps, bool prune) {
  std::set<std::string> out;
  for (const auto& p : ps) out.insert(canonical_key(prune ? prune_dead(p) : p));
  return out;
}

std::set<std::string> encoded_keys(const std::vector<spi::SpiProcess>& ps) {
  std::set<std::string> out;
  for (const auto& p : ps) out.insert(canonical_key(prune_dead(spi::encode_spi_proc(p))));
  return out;
}

// ---- Linda -----------------------------------------------------------------

TEST(Linda, MatchTable) {
  using linda::Field;
  auto m = linda::linda_match({Field{true, N("x")}, Field{false, N("b")}}, {N("a"), N("b")});
  ASSERT_TRUE(m);
  EXPECT_EQ(*m, (linda::NameMap{{N("x"), N("a")}}));
  EXPECT_FALSE(linda::linda_match({Field{false, N("b")}}, {N("c")}));
  auto empty = linda::linda_match({}, {});
  ASSERT_TRUE(empty);
  EXPECT_TRUE(empty->empty());
  EXPECT_FALSE(linda::linda_match({Field{true, N("x")}}, {N("a"), N("b")}));
}

TEST(Linda, RepeatedBinderRejected) {
  using linda::Field;
  EXPECT_THROW(linda::LindaProcess::input({Field{true, N("x")}, Field{true, N("x")}}, linda::LindaProcess::null()),
               std::invalid_argument);
  EXPECT_THROW(L("in(\\x,\\x).ok"), ParseError);
}

TEST(Linda, Reduce) {
  auto rs = linda::linda_reduce(L("out(b) | in(\\x).ok"));
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(linda::key(rs[0]), linda::key(L("ok")));

  EXPECT_TRUE(linda::linda_reduce(L("out(b) | out(b)")).empty());
  EXPECT_TRUE(linda::linda_reduce(L("out(a,b) | in(\\x).ok")).empty());
  EXPECT_TRUE(linda::linda_reduce(L("out(a) | in(=b).ok")).empty());

  rs = linda::linda_reduce(L("out(a,b) | in(=a,\\y).out(y,y)"));
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(linda::key(rs[0]), linda::key(L("out(b,b)")));
}

TEST(Linda, ReduceUnderRestrictionAndReplication) {
  auto rs = linda::linda_reduce(L("(new k) (out(k) | in(=k).ok)"));
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_TRUE(linda::has_success(rs[0]));

  rs = linda::linda_reduce(L("!out(a) | in(\\x).in(\\y).out(x,y)"));
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(linda::key(rs[0]), linda::key(L("!out(a) | in(\\y).out(a,y)")));
}

TEST(Linda, SubstitutionAvoidsCapture) {
  // y is free in the datum and bound inside the continuation.
  auto rs = linda::linda_reduce(L("out(y) | in(\\x).in(\\y).out(x,y)"));
  ASSERT_EQ(rs.size(), 1u);
  auto next = linda::linda_reduce(linda::LindaProcess::par(rs[0], L("out(c)")));
  ASSERT_EQ(next.size(), 1u);
  EXPECT_EQ(linda::key(next[0]), linda::key(L("out(y,c)")));
}

TEST(Linda, OutputShape) {
  Process E = linda::encode_linda(L("out(b)"));
  ASSERT_TRUE(E.is(Process::Kind::Case));
  EXPECT_TRUE(E.body().is(Process::Kind::Null));
  const Pattern& p = E.pattern();
  ASSERT_TRUE(p.is_compound());
  ASSERT_TRUE(p.left().is_compound());
  ASSERT_TRUE(p.right().is_compound());
  EXPECT_EQ(p.left().left(), Pattern::variable(N("b")));
  EXPECT_EQ(p.left().right().kind(), Pattern::Kind::Binding);
  EXPECT_EQ(p.right().left(), Pattern::variable(hash_name()));
  EXPECT_EQ(p.right().right().kind(), Pattern::Kind::Binding);
  EXPECT_NE(p.left().right().name(), p.right().right().name());
}

TEST(Linda, InputShapeAndUnifier) {
  Process In = linda::encode_linda(L("in(\\y).0"));
  ASSERT_TRUE(In.is(Process::Kind::Case));
  const Pattern& t = In.pattern();
  EXPECT_EQ(t.left(), parse_pattern("\\y . _hash"));
  ASSERT_EQ(t.right().left().kind(), Pattern::Kind::Binding);
  EXPECT_EQ(t.right().right(), Pattern::variable(hash_name()));
  Name x = t.right().left().name();

  const Pattern b = linda::encode_linda(L("out(b)")).pattern();
  Name x1 = b.left().right().name();
  Name x2 = b.right().right().name();
  auto u = unify(t, b);
  ASSERT_TRUE(u);
  Pattern h = Pattern::variable(hash_name());
  EXPECT_EQ(u->left, (Substitution{{N("y"), Pattern::variable(N("b"))}, {x, h}}));
  EXPECT_EQ(u->right, (Substitution{{x1, h}, {x2, h}}));
}

TEST(Linda, BinderClashingWithExactFieldIsRenamed) {
  auto P = L("out(a,c) | in(\\c,=c).out(c)");
  auto rs = linda::linda_reduce(P);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(linda::key(rs[0]), linda::key(L("out(a)")));
  EXPECT_TRUE(check_encoding(P, 3).valid());
}

TEST(Linda, ParserRoundTrip) {
  for (const char* s : {"0", "ok", "out()", "out(a,b)", "in().ok", "in(\\x,=b).out(x)", "!in(\\x).out(x)",
                        "(new k) (out(k) | in(=k).ok)", "out(a) | out(b) | in(\\x,\\y).0"}) {
    auto P = L(s);
    auto Q = L(linda::to_string(P).c_str());
    EXPECT_EQ(linda::key(P), linda::key(Q)) << s;
    EXPECT_EQ(linda::to_string(P), linda::to_string(Q)) << s;
  }
  for (const char* bad : {"out(a", "in(x).0", "out(new)", "in(\\_x).0", "out(a) |", "(new) 0"})
    EXPECT_THROW(L(bad), ParseError) << bad;
}

// Every template and datum of length <= 3 over {a, b}; templates bind x, y, z.
TEST(Linda, MatchingCorrespondenceExhaustive) {
  const std::vector<Name> pool{N("a"), N("b")};
  const std::vector<Name> binders{N("x"), N("y"), N("z")};

  std::vector<linda::Template> templates{{}};
  std::vector<linda::Data> data{{}};
  for (std::size_t len = 1; len <= 3; ++len) {
    std::vector<linda::Template> tn;
    std::vector<linda::Data> dn;
    for (const auto& t : templates)
      if (t.size() == len - 1) {
        tn.push_back(t);
        tn.back().push_back({true, binders[len - 1]});
        for (Name n : pool) {
          tn.push_back(t);
          tn.back().push_back({false, n});
        }
      }
    for (const auto& d : data)
      if (d.size() == len - 1)
        for (Name n : pool) {
          dn.push_back(d);
          dn.back().push_back(n);
        }
    templates.insert(templates.end(), tn.begin(), tn.end());
    data.insert(data.end(), dn.begin(), dn.end());
  }
  ASSERT_EQ(templates.size(), 1u + 3 + 9 + 27);
  ASSERT_EQ(data.size(), 1u + 2 + 4 + 8);

  const Pattern h = Pattern::variable(hash_name());
  std::size_t matched = 0;
  for (const auto& t : templates) {
    std::vector<cpc::testing::Field> ot;
    NameSet tb;
    for (const auto& f : t) {
      ot.push_back({f.bind, f.name.text()});
      if (f.bind) tb.insert(f.name);
    }
    const Pattern pt = linda::patt(t);
    for (const auto& d : data) {
      std::vector<std::string> od;
      for (Name n : d) od.push_back(n.text());
      const Pattern pb = linda::patb(d);

      auto m = linda::linda_match(t, d);
      auto expected = cpc::testing::oracle_linda_match(ot, od);
      ASSERT_EQ(m.has_value(), expected.has_value());
      auto u = unify(pt, pb);
      ASSERT_EQ(m.has_value(), u.has_value()) << linda::to_string(t);
      if (!m) continue;
      ++matched;

      cpc::testing::PlainSubst got;
      for (auto [k, v] : *m) got.emplace(k.text(), v.text());
      EXPECT_EQ(got, *expected);

      // Left: sigma plus exactly one extra binder sent to _hash.
      Substitution sigma;
      for (auto [k, v] : *m) sigma.set(k, Pattern::variable(v));
      EXPECT_EQ(u->left.restricted_to(tb), sigma);
      Substitution extra = u->left.without(tb);
      ASSERT_EQ(extra.size(), 1u);
      EXPECT_EQ(*extra.begin()->second.name().text().c_str(), '_');
      EXPECT_EQ(extra.begin()->second, h);

      // Right: every binder of patb sent to _hash.
      EXPECT_EQ(u->right.domain(), binding_names(pb));
      EXPECT_EQ(u->right.size(), d.size() + 1);
      for (const auto& [k, v] : u->right) EXPECT_EQ(v, h);
    }
  }
  EXPECT_GT(matched, 0u);
}

// ---- Non-encodability of self-matching into Linda --------------------------

std::vector<linda::LindaProcess> linda_terms(std::size_t size) {
  using LP = linda::LindaProcess;
  using linda::Field;
  static std::map<std::size_t, std::vector<LP>> memo;
  if (auto it = memo.find(size); it != memo.end()) return it->second;
  std::vector<LP> out;
  if (size == 1) {
    out = {LP::null(), LP::ok(), LP::output({}), LP::output({N("a")}), LP::output({N("b")}),
           LP::output({N("a"), N("b")})};
  } else {
    const std::vector<linda::Template> tmpls{
        {}, {Field{true, N("x")}}, {Field{false, N("a")}}, {Field{true, N("x")}, Field{false, N("b")}}};
    for (const auto& P : linda_terms(size - 1)) {
      for (const auto& t : tmpls) out.push_back(LP::input(t, P));
      out.push_back(LP::replicate(P));
      out.push_back(LP::restrict(N("a"), P));
    }
    for (std::size_t l = 1; l + 1 < size; ++l)
      for (const auto& P : linda_terms(l))
        for (const auto& Q : linda_terms(size - 1 - l)) out.push_back(LP::par(P, Q));
  }
  memo[size] = out;
  return out;
}

TEST(Linda, SelfInteractionImpliesInteraction) {
  std::size_t checked = 0, doubled = 0;
  for (std::size_t size = 1; size <= 4; ++size)
    for (const auto& P : linda_terms(size)) {
      ++checked;
      if (linda::linda_reduce(linda::LindaProcess::par(P, P)).empty()) continue;
      ++doubled;
      EXPECT_FALSE(linda::linda_reduce(P).empty()) << linda::to_string(P);
    }
  EXPECT_GT(checked, 2000u);
  EXPECT_GT(doubled, 0u);

  EXPECT_TRUE(succeeds(parse_process("x -> ok | x -> ok"), 1));
  EXPECT_FALSE(succeeds(parse_process("x -> ok"), 5));
}

// ---- Structural properties of encode_linda ---------------------------------

linda::LindaProcess random_linda(Rng& rng, int depth) {
  using LP = linda::LindaProcess;
  const std::vector<Name> pool{N("a"), N("b"), N("c")};
  auto pick = [&] { return pool[rng() % pool.size()]; };
  int choice = depth <= 0 ? static_cast<int>(rng() % 3) : static_cast<int>(rng() % 7);
  switch (choice) {
    case 0: return LP::null();
    case 1: return LP::ok();
    case 2: {
      linda::Data d(rng() % 3);
      for (auto& n : d) n = pick();
      return LP::output(d);
    }
    case 3: {
      linda::Template t;
      const Name bs[] = {N("x"), N("y")};
      std::size_t len = rng() % 3;
      for (std::size_t i = 0; i < len; ++i) t.push_back(rng() % 2 ? linda::Field{true, bs[i]} : linda::Field{false, pick()});
      return LP::input(t, random_linda(rng, depth - 1));
    }
    case 4: return LP::par(random_linda(rng, depth - 1), random_linda(rng, depth - 1));
    case 5: return LP::restrict(pick(), random_linda(rng, depth - 1));
    default: return LP::replicate(random_linda(rng, depth - 1));
  }
}

TEST(Linda, EncodingIsCompositional) {
  Rng rng(17);
  for (int i = 0; i < 300; ++i) {
    auto P = random_linda(rng, 3);
    auto Q = random_linda(rng, 3);
    using LP = linda::LindaProcess;
    EXPECT_TRUE(struct_eq(linda::encode_linda(LP::par(P, Q)),
                          Process::par(linda::encode_linda(P), linda::encode_linda(Q))));
    EXPECT_TRUE(struct_eq(linda::encode_linda(LP::restrict(N("a"), P)),
                          Process::restrict(N("a"), linda::encode_linda(P))));
    EXPECT_TRUE(struct_eq(linda::encode_linda(LP::replicate(P)), Process::replicate(linda::encode_linda(P))));
  }
}

TEST(Linda, EncodingCommutesWithRenaming) {
  Rng rng(23);
  const linda::NameMap swap{{N("a"), N("b")}, {N("b"), N("a")}, {N("c"), N("d")}};
  for (int i = 0; i < 300; ++i) {
    auto P = random_linda(rng, 3);
    EXPECT_TRUE(struct_eq(linda::encode_linda(linda::rename_free(P, swap)),
                          rename_free(linda::encode_linda(P), swap)))
        << linda::to_string(P);
  }
}

// ---- Spi -------------------------------------------------------------------

TEST(Spi, TermEquality) {
  EXPECT_EQ(T("2"), T("suc(suc(0))"));
  EXPECT_EQ(T("(1, a)"), T("(suc(0), a)"));
  EXPECT_FALSE(T("2") == T("1"));
  EXPECT_FALSE(T("{a}b") == T("(a, b)"));
}

TEST(Spi, TermEncoding) {
  EXPECT_EQ(spi::encode_spi_term(T("(a, b)")), parse_pattern("pair . a . b"));
  EXPECT_EQ(spi::encode_spi_term(T("{a}k")), parse_pattern("encr . a . k"));
  EXPECT_EQ(spi::encode_spi_term(T("suc(a)")), parse_pattern("suc . a"));
  EXPECT_EQ(spi::encode_spi_term(T("0")), Pattern::variable(N("0")));
  Pattern two = spi::encode_spi_term(T("2"));
  Pattern suc = Pattern::variable(N("suc"));
  Pattern zero = Pattern::variable(N("0"));
  EXPECT_EQ(two, Pattern::compound(suc, Pattern::compound(suc, zero)));
  EXPECT_EQ(two, spi::encode_spi_term(T("suc(suc(0))")));
}

TEST(Spi, ProcessEncoding) {
  Process in = spi::encode_spi_proc(S("a?(x).0"));
  ASSERT_TRUE(in.is(Process::Kind::Case));
  EXPECT_EQ(in.pattern(), parse_pattern("a . \\x . _hash"));

  Process out = spi::encode_spi_proc(S("a!<b>.ok"));
  ASSERT_TRUE(out.is(Process::Kind::Case));
  EXPECT_EQ(out.pattern().left(), parse_pattern("a . b"));
  EXPECT_EQ(out.pattern().right().kind(), Pattern::Kind::Binding);
  EXPECT_TRUE(out.body().is(Process::Kind::Success));

  // The bound variable is renamed when it also occurs in the channel.
  Process self = spi::encode_spi_proc(S("x?(x).x!<x>"));
  Name y = self.pattern().left().right().name();
  EXPECT_NE(y, N("x"));
  EXPECT_TRUE(self.pattern().left().left() == Pattern::variable(N("x")));
}

TEST(Spi, ReservedNamesRejected) {
  for (const char* s : {"pair!<a>", "a!<encr>", "suc?(x).0", "a?(pair).0", "(new suc) 0"})
    EXPECT_THROW(S(s), ParseError) << s;
  using SP = spi::SpiProcess;
  using ST = spi::SpiTerm;
  EXPECT_THROW(spi::encode_spi_proc(SP::output(ST::name(N("pair")), ST::name(N("a")), SP::null())), spi::EncodingError);
  EXPECT_THROW(spi::encode_spi_proc(SP::input(ST::name(N("a")), N("encr"), SP::null())), spi::EncodingError);
  EXPECT_THROW(spi::encode_spi_proc(SP::restrict(N("suc"), SP::null())), spi::EncodingError);
  EXPECT_NO_THROW(spi::encode_spi_proc(S("a!<0>")));
  EXPECT_NO_THROW(spi::encode_spi_proc(S("a!<suc(b)>")));
}

TEST(Spi, ReduceExamples) {
  auto key = [](const spi::SpiProcess& p) { return spi::key(p); };
  auto rs = spi::spi_reduce(S("[a is a] ok"));
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(key(rs[0]), key(S("ok")));
  EXPECT_TRUE(spi::spi_reduce(S("[a is b] ok")).empty());

  rs = spi::spi_reduce(S("case {m}k of {x}k : x!<x>"));
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(key(rs[0]), key(S("m!<m>")));
  EXPECT_TRUE(spi::spi_reduce(S("case {m}k of {x}j : x!<x>")).empty());

  rs = spi::spi_reduce(S("case suc(n) of 0 : ok suc(x) : x!<x>"));
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(key(rs[0]), key(S("n!<n>")));
  rs = spi::spi_reduce(S("case 1 of 0 : ok suc(x) : x!<x>"));
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(key(rs[0]), key(S("0!<0>")));
  rs = spi::spi_reduce(S("case 0 of 0 : ok suc(x) : x!<x>"));
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(key(rs[0]), key(S("ok")));

  rs = spi::spi_reduce(S("let (x,y) = (a,b) in x!<y>"));
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(key(rs[0]), key(S("a!<b>")));

  rs = spi::spi_reduce(S("c!<(a,b)>.ok | c?(z).z!<z>"));
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(key(rs[0]), key(S("ok | (a,b)!<(a,b)>")));
}

TEST(Spi, MatchThenOneStep) {
  Process E = spi::encode_spi_proc(S("[a is a] ok"));
  auto rs = reductions(E);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_TRUE(struct_eq(prune_dead(rs[0]), parse_process("ok")));
}

TEST(Spi, ParserRoundTrip) {
  for (const char* s : {"0", "ok", "a!<b>", "a!<(b,c)>.ok", "a?(x).x!<x>", "[a is b] ok", "let (x,y) = (a,b) in x!<y>",
                        "case {m}k of {x}k : x!<x>", "case 2 of 0 : ok suc(x) : x!<x>", "!a?(x).0",
                        "(new k) (c!<{m}k> | c?(y).0)", "(a!<b> | b!<a>)"}) {
    auto P = S(s);
    auto Q = S(spi::to_string(P).c_str());
    EXPECT_EQ(spi::to_string(P), spi::to_string(Q)) << s;
    EXPECT_EQ(spi::key(P), spi::key(Q)) << s;
  }
  for (const char* bad : {"a!<b", "a?x", "[a is] ok", "let (x,x) = a in 0", "case a of 0 : ok", "a!<>"})
    EXPECT_THROW(S(bad), ParseError) << bad;
}

// Closed terms over {a, b} of depth <= 2.
std::vector<spi::SpiTerm> closed_terms() {
  using ST = spi::SpiTerm;
  std::vector<ST> base{ST::name(N("a")), ST::name(N("b")), ST::zero(), ST::integer(1)};
  std::vector<ST> out = base;
  for (const auto& m : base) {
    out.push_back(ST::suc(m));
    for (const auto& n : base) {
      out.push_back(ST::pair(m, n));
      out.push_back(ST::encrypt(m, n));
    }
  }
  return out;
}

enum class Head { Name, Pair, Encr, Zero, Suc };

Head head(const spi::SpiTerm& t) {
  using K = spi::SpiTerm::Kind;
  switch (t.kind()) {
    case K::Name: return Head::Name;
    case K::Pair: return Head::Pair;
    case K::Encrypt: return Head::Encr;
    case K::Zero: return Head::Zero;
    default: return Head::Suc;
  }
}

TEST(Spi, TagSafety) {
  const auto terms = closed_terms();
  ASSERT_EQ(terms.size(), 4u + 4 + 32);
  for (const auto& m : terms)
    for (const auto& n : terms) {
      bool u = unify(spi::encode_spi_term(m), spi::encode_spi_term(n)).has_value();
      if (head(m) != head(n)) EXPECT_FALSE(u) << spi::to_string(m) << " vs " << spi::to_string(n);
      EXPECT_EQ(u, m == n);
    }

  // Destructor patterns only accept their own constructor.
  const Pattern split = parse_pattern("(#pair . \\x) . \\y");
  const Pattern zero = parse_pattern("#0");
  const Pattern succ = parse_pattern("#suc . \\x");
  for (const auto& m : terms) {
    Pattern e = spi::encode_spi_term(m);
    EXPECT_EQ(unify(split, e).has_value(), head(m) == Head::Pair) << spi::to_string(m);
    EXPECT_EQ(unify(zero, e).has_value(), head(m) == Head::Zero) << spi::to_string(m);
    EXPECT_EQ(unify(succ, e).has_value(), head(m) == Head::Suc) << spi::to_string(m);
    for (const auto& k : terms) {
      const Pattern decr = Pattern::compound(parse_pattern("#encr . \\x"), spi::encode_spi_term(k));
      bool expect = head(m) == Head::Encr && m.second() == k;
      EXPECT_EQ(unify(decr, e).has_value(), expect) << spi::to_string(m) << " key " << spi::to_string(k);
    }
  }
}

// Source and encoded one-step reducts agree up to prune_dead and ≡.
void expect_axiom(const spi::SpiProcess& P, std::size_t expected_steps) {
  auto src = spi::spi_reduce(P);
  ASSERT_EQ(src.size(), expected_steps) << spi::to_string(P);
  EXPECT_EQ(keys_of(reductions(spi::encode_spi_proc(P)), true), encoded_keys(src)) << spi::to_string(P);
}

TEST(Spi, AxiomsOverClosedTerms) {
  using SP = spi::SpiProcess;
  using ST = spi::SpiTerm;
  const auto terms = closed_terms();
  const Name x = N("x"), y = N("y");
  const ST vx = ST::name(x), vy = ST::name(y);
  const SP use_x = SP::output(vx, vx, SP::ok());
  const SP use_xy = SP::output(vx, vy, SP::null());

  for (const auto& m : terms) {
    // Communication with a channel of depth <= 1 (channels deeper than that only multiply work).
    if (m.depth() <= 1)
      for (const auto& n : terms) expect_axiom(SP::par(SP::output(m, n, SP::ok()), SP::input(m, x, use_x)), 1);
    for (const auto& n : terms) expect_axiom(SP::match(m, n, SP::ok()), m == n ? 1 : 0);
    expect_axiom(SP::split(x, y, m, use_xy), head(m) == Head::Pair ? 1 : 0);
    for (const auto& k : terms)
      expect_axiom(SP::decrypt(m, x, k, use_x), head(m) == Head::Encr && m.second() == k ? 1 : 0);
    bool is_nat = head(m) == Head::Zero || head(m) == Head::Suc;
    expect_axiom(SP::case_int(m, SP::ok(), x, use_x), is_nat ? 1 : 0);
  }
}

// ---- check_encoding --------------------------------------------------------

TEST(CheckEncoding, LindaOneStepToSuccess) {
  auto P = L("out(b) | in(\\x).ok");
  auto r = check_encoding(P, 6);
  EXPECT_TRUE(r.valid()) << to_text(r);
  EXPECT_EQ(r.source_states, 2u);
  Process E = linda::encode_linda(P);
  EXPECT_FALSE(has_success(E));
  EXPECT_FALSE(succeeds(E, 0));
  EXPECT_TRUE(succeeds(E, 1));
}

TEST(CheckEncoding, SpiSuccessOnLeftContinuation) {
  auto P = S("a!<b>.ok | a?(x).0");
  auto r = check_encoding(P, 6);
  EXPECT_TRUE(r.valid()) << to_text(r);
  EXPECT_TRUE(r.success.ok);
  EXPECT_TRUE(succeeds(spi::encode_spi_proc(P), 1));
}

TEST(CheckEncoding, Replication) {
  EXPECT_TRUE(check_encoding(L("!out(a) | !in(=a).out(b) | in(=b).ok"), 4).valid());
  EXPECT_TRUE(check_encoding(S("!c!<a> | c?(x).c?(y).[x is y] ok"), 4).valid());
}

TEST(CheckEncoding, ReportText) {
  auto r = check_encoding(L("out(a)"), 2);
  std::string text = to_text(r);
  EXPECT_NE(text.find("valid"), std::string::npos);
  EXPECT_NE(text.find("(d) divergence reflection: ok"), std::string::npos);
}

}  // namespace
