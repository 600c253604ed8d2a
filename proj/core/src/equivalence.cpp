#include "cpc/equivalence.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "cpc/reduction.hpp"

namespace cpc {

namespace {

Pattern V(Name n) { return Pattern::variable(n); }
Pattern Pn(Name n) { return Pattern::protected_name(n); }
Pattern B(Name n) { return Pattern::binding(n); }
Pattern C(Pattern a, Pattern b) { return Pattern::compound(std::move(a), std::move(b)); }
Process emit(Pattern p) { return Process::case_of(std::move(p), Process::null()); }

// ⌐w1¬ -> ... -> ⌐wk¬ -> last
Process chain(const std::vector<Name>& guards, Process last) {
  for (auto it = guards.rbegin(); it != guards.rend(); ++it) last = Process::case_of(Pn(*it), last);
  return last;
}

Process failure(const Reporters& r) {
  Name z = Name::fresh();
  return emit(C(Pn(r.f), B(z)));
}

void spec_into(const NameSet& N, const Pattern& p, Specification& s, Pattern& out) {
  switch (p.kind()) {
    case Pattern::Kind::Binding:
      out = V(p.name());
      return;
    case Pattern::Kind::Variable: {
      Name x = Name::fresh();
      (N.count(p.name()) ? s.free_expect : s.rest_expect).emplace_back(x, p.name());
      out = B(x);
      return;
    }
    case Pattern::Kind::Protected:
      out = p;
      return;
    case Pattern::Kind::Compound: {
      Pattern l = p, r = p;
      spec_into(N, p.left(), s, l);
      spec_into(N, p.right(), s, r);
      out = C(l, r);
      return;
    }
  }
}

}  // namespace

Specification spec(const NameSet& N, const Pattern& p) {
  Specification s{p, {}, {}};
  spec_into(N, p, s, s.complementary);
  return s;
}

Reporters Reporters::fresh() { return {Name::fresh(), Name::fresh()}; }

Process build_check(Name x, Name m, Name y, Name n, Name w, const Reporters& r) {
  Name z = Name::fresh();
  if (m == n)
    return Process::restrict(
        z, Process::par(emit(C(Pn(z), Pn(x))), Process::case_of(C(Pn(z), Pn(y)), emit(Pn(w)))));
  return Process::par(emit(Pn(w)),
                      Process::restrict(z, Process::par(emit(C(Pn(z), Pn(x))),
                                                        Process::case_of(C(Pn(z), Pn(y)), failure(r)))));
}

Process build_free_test(Name x, Name n, Name w) {
  Name m = Name::fresh();
  return Process::restrict(m, Process::par(Process::case_of(C(Pn(m), Pn(n)), emit(Pn(w))), emit(C(Pn(m), Pn(x)))));
}

Process build_rest_test(const NameSet& N, Name x, Name w, const Reporters& r) {
  Name m = Name::fresh(), z = Name::fresh();
  std::vector<Process> parts;
  parts.push_back(emit(C(C(Pn(m), V(x)), V(z))));
  Name y1 = Name::fresh(), y2 = Name::fresh(), z1 = Name::fresh();
  parts.push_back(Process::case_of(C(C(Pn(m), C(B(y1), B(y2))), B(z1)), failure(r)));
  for (Name n : N) {
    Name zn = Name::fresh();
    parts.push_back(Process::case_of(C(C(Pn(m), Pn(n)), B(zn)), failure(r)));
  }
  return Process::par(emit(Pn(w)), Process::restrict_all({m, z}, Process::par_of(parts)));
}

Process build_equality_test(const NamePairs& R, Name x, Name m, Name w, const Reporters& r) {
  std::vector<Name> guards;
  std::vector<Process> parts;
  for (const auto& [y, n] : R) {
    Name wy = Name::fresh();
    guards.push_back(wy);
    parts.push_back(build_check(x, m, y, n, wy, r));
  }
  parts.insert(parts.begin(), chain(guards, emit(Pn(w))));
  return Process::restrict_all(guards, Process::par_of(parts));
}

Process build_tests(const NameSet& N, const NamePairs& F, const NamePairs& R, const Reporters& r) {
  std::vector<Name> wx, wy;
  std::vector<Process> parts;
  for (const auto& [x, n] : R) {
    wx.push_back(Name::fresh());
    parts.push_back(build_equality_test(R, x, n, wx.back(), r));
  }
  for (const auto& [y, n] : F) {
    wy.push_back(Name::fresh());
    parts.push_back(build_free_test(y, n, wy.back()));
  }
  for (const auto& [y, n] : R) {
    (void)n;
    wy.push_back(Name::fresh());
    parts.push_back(build_rest_test(N, y, wy.back(), r));
  }
  std::vector<Pattern> report{Pn(r.w)};
  for (const auto& [x, n] : R) report.push_back(V(x));
  std::vector<Name> guards = wx;
  guards.insert(guards.end(), wy.begin(), wy.end());
  parts.insert(parts.begin(), chain(guards, emit(compound_of(report))));
  return Process::restrict_all(guards, Process::par_of(parts));
}

Process char_proc(const NameSet& N, const Pattern& p, const Reporters& r) {
  Specification s = spec(N, p);
  return Process::case_of(s.complementary, build_tests(N, s.free_expect, s.rest_expect, r));
}

std::size_t tests_step_count(const NamePairs& F, const NamePairs& R) {
  std::size_t k = 2 * F.size() + R.size();
  for (const auto& [x, n] : R) {
    std::size_t h = std::count_if(R.begin(), R.end(), [&](const auto& e) { return e.second == n; });
    k += R.size() + h + 1;
  }
  return k;
}

Outcome explore_outcome(const Process& P, const Reporters& r, std::size_t max_states) {
  Outcome out;
  auto scan = [&](const Process& S, std::size_t steps) {
    for (const auto& b : barbs(S)) {
      if (b.names.count(r.w)) {
        out.reaches_w = true;
        if (!out.min_steps_to_w) out.min_steps_to_w = steps;
      }
      if (b.names.count(r.f)) out.reaches_f = true;
    }
  };
  std::set<std::string> seen{canonical_key(P)};
  std::deque<std::pair<Process, std::size_t>> queue{{P, 0}};
  while (!queue.empty()) {
    auto [S, steps] = queue.front();
    queue.pop_front();
    ++out.states;
    scan(S, steps);
    for (const auto& rx : redexes(S)) {
      if (!seen.insert(rx.key).second) continue;
      if (seen.size() > max_states) {
        out.complete = false;
        return out;
      }
      queue.emplace_back(rx.result, steps + 1);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Pattern> communicable_patterns(const std::vector<Name>& pool, std::size_t depth) {
  std::vector<std::vector<Pattern>> by_depth(depth + 1);
  for (Name n : pool) by_depth[0].push_back(V(n));
  for (std::size_t d = 1; d <= depth; ++d) {
    std::vector<Pattern> below;
    for (std::size_t e = 0; e < d; ++e) below.insert(below.end(), by_depth[e].begin(), by_depth[e].end());
    for (const auto& l : below)
      for (const auto& r : below)
        if (std::max(l.depth(), r.depth()) + 1 == d) by_depth[d].push_back(C(l, r));
  }
  std::vector<Pattern> out;
  for (auto& v : by_depth) out.insert(out.end(), v.begin(), v.end());
  return out;
}

namespace {

struct Reply {
  Label label;
  Substitution rho;
  Process target;  // rho applied
};

std::vector<Substitution> instantiations(const std::vector<Name>& binders, const std::vector<Pattern>& images) {
  std::vector<Substitution> out{Substitution{}};
  for (Name b : binders) {
    std::vector<Substitution> next;
    for (const auto& s : out)
      for (const auto& img : images) {
        Substitution t = s;
        t.set(b, img);
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

class Game {
 public:
  explicit Game(const BisimConfig& cfg, std::vector<Name> pool) : cfg_(cfg), pool_(std::move(pool)) {}

  std::size_t explored() const { return memo_.size(); }

  std::shared_ptr<const WitnessNode> refute(const Process& P, const Process& Q, std::size_t d) {
    if (d == 0) return nullptr;
    auto key = std::make_tuple(canonical_key(P), canonical_key(Q), d);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::shared_ptr<const WitnessNode> result = challenge(Side::Left, P, Q, d);
    if (!result) result = challenge(Side::Right, P, Q, d);
    memo_.emplace(std::move(key), result);
    return result;
  }

  NameSet avoid_for(const Process& P, const Process& Q) const {
    NameSet a = set_union(free_names_proc(P), free_names_proc(Q));
    a.insert(pool_.begin(), pool_.end());
    return a;
  }

  std::vector<Pattern> images_for(const Process& P, const Process& Q) const {
    NameSet names(pool_.begin(), pool_.end());
    names = set_union(names, set_union(free_names_proc(P), free_names_proc(Q)));
    return communicable_patterns(std::vector<Name>(names.begin(), names.end()), cfg_.instantiation_depth);
  }

  // Challenges from `side`, oriented so that (A, B) = challenger, defender.
  std::vector<std::pair<Transition, std::vector<Substitution>>> challenges(const Process& A, const Process& P,
                                                                           const Process& Q) const {
    NameSet avoid = avoid_for(P, Q);
    std::vector<std::pair<Transition, std::vector<Substitution>>> out;
    std::vector<Pattern> images;
    bool have_images = false;
    for (const auto& raw : transitions(A)) {
      Transition t = freshen(raw, avoid);
      if (t.label.is_tau()) {
        out.emplace_back(t, std::vector<Substitution>{Substitution{}});
        continue;
      }
      if (!have_images) {
        images = images_for(P, Q);
        have_images = true;
      }
      out.emplace_back(t, instantiations(binding_names_ordered(*t.label.pattern), images));
    }
    return out;
  }

  std::vector<Reply> replies(const Transition& t, const Substitution& sigma, const Process& B, const NameSet& avoid) const {
    std::vector<Reply> out;
    if (t.label.is_tau()) {
      for (const auto& u : transitions(B))
        if (u.label.is_tau()) out.push_back({u.label, {}, u.target});
      return out;
    }
    const Pattern& p = *t.label.pattern;
    NameSet avoid2 = avoid;
    avoid2.insert(t.label.extruded.begin(), t.label.extruded.end());
    for (Name b : binding_names(p)) avoid2.insert(b);
    for (const auto& raw : transitions(B)) {
      if (raw.label.is_tau() || raw.label.extruded.size() != t.label.extruded.size()) continue;
      Transition u = freshen(raw, avoid2);
      std::vector<Name> target = t.label.extruded;
      std::sort(target.begin(), target.end());
      do {
        std::map<Name, Name> zeta;
        for (std::size_t i = 0; i < target.size(); ++i) zeta[u.label.extruded[i]] = target[i];
        Pattern q = rename_all(*u.label.pattern, zeta);
        auto rho = compat_reply(p, sigma, q);
        if (!rho) continue;
        Process Bt = subst_proc(*rho, rename_free(u.target, zeta));
        out.push_back({Label::out(t.label.extruded, q), *rho, Bt});
      } while (std::next_permutation(target.begin(), target.end()));
    }
    return out;
  }

 private:
  std::shared_ptr<const WitnessNode> challenge(Side side, const Process& P, const Process& Q, std::size_t d) {
    const Process& A = side == Side::Left ? P : Q;
    const Process& Bp = side == Side::Left ? Q : P;
    NameSet avoid = avoid_for(P, Q);
    for (const auto& [t, sigmas] : challenges(A, P, Q)) {
      for (const auto& sigma : sigmas) {
        Process At = sigma.empty() ? t.target : subst_proc(sigma, t.target);
        std::vector<WitnessReply> refuted;
        bool answered = false;
        for (auto& r : replies(t, sigma, Bp, avoid)) {
          auto sub = side == Side::Left ? refute(At, r.target, d - 1) : refute(r.target, At, d - 1);
          if (!sub) {
            answered = true;
            break;
          }
          refuted.push_back({r.label, r.rho, r.target, sub});
        }
        if (answered) continue;
        auto node = std::make_shared<WitnessNode>();
        node->side = side;
        node->left = P;
        node->right = Q;
        node->challenge = t.label;
        node->challenge_target = t.target;
        node->sigma = sigma;
        node->replies = std::move(refuted);
        node->depth = d;
        return node;
      }
    }
    return nullptr;
  }

  const BisimConfig& cfg_;
  std::vector<Name> pool_;
  std::map<std::tuple<std::string, std::string, std::size_t>, std::shared_ptr<const WitnessNode>> memo_;
};

std::vector<Name> default_pool(const Process& P, const Process& Q, const BisimConfig& cfg) {
  if (!cfg.name_pool.empty()) return cfg.name_pool;
  NameSet fn = set_union(free_names_proc(P), free_names_proc(Q));
  std::vector<Name> pool(fn.begin(), fn.end());
  NameSet taken = set_union(fn, set_union(bound_names_proc(P), bound_names_proc(Q)));
  for (int i = 0, added = 0; added < 2; ++i) {
    Name k = Name::surface(i == 0 ? "k" : "k" + std::to_string(i));
    if (taken.count(k)) continue;
    pool.push_back(k);
    ++added;
  }
  return pool;
}

// Maps from `names` into `pool`, fewest moved names first.
std::vector<std::map<Name, Name>> pre_maps(const std::vector<Name>& names, const std::vector<Name>& pool,
                                           std::size_t cap, bool& truncated) {
  std::vector<std::map<Name, Name>> out{{}};
  truncated = false;
  for (std::size_t moved = 1; moved <= names.size(); ++moved) {
    std::vector<std::size_t> idx(moved);
    std::function<void(std::size_t, std::size_t, std::map<Name, Name>&)> rec =
        [&](std::size_t start, std::size_t k, std::map<Name, Name>& cur) {
          if (truncated) return;
          if (k == moved) {
            if (out.size() >= cap) {
              truncated = true;
              return;
            }
            out.push_back(cur);
            return;
          }
          for (std::size_t i = start; i < names.size(); ++i)
            for (Name target : pool) {
              if (target == names[i]) continue;
              cur[names[i]] = target;
              rec(i + 1, k + 1, cur);
              cur.erase(names[i]);
            }
        };
    std::map<Name, Name> cur;
    rec(0, 0, cur);
    if (truncated) break;
  }
  return out;
}

Substitution as_subst(const std::map<Name, Name>& m) {
  Substitution s;
  for (const auto& [a, b] : m) s.set(a, V(b));
  return s;
}

std::map<Name, Name> as_map(const Substitution& s) {
  std::map<Name, Name> m;
  for (const auto& [a, p] : s) m[a] = p.name();
  return m;
}

std::string side_name(Side s) { return s == Side::Left ? "left" : "right"; }

}  // namespace

BisimResult bounded_bisim(const Process& P, const Process& Q, const BisimConfig& cfg) {
  BisimResult res;
  std::vector<Name> pool = default_pool(P, Q, cfg);
  Game game(cfg, pool);
  NameSet fn = set_union(free_names_proc(P), free_names_proc(Q));
  std::vector<std::map<Name, Name>> maps{{}};
  if (cfg.substitution_round)
    maps = pre_maps(std::vector<Name>(fn.begin(), fn.end()), pool, cfg.max_pre_substitutions, res.pre_round_truncated);
  for (const auto& m : maps) {
    ++res.pre_substitutions;
    Process P0 = m.empty() ? P : rename_free(P, m);
    Process Q0 = m.empty() ? Q : rename_free(Q, m);
    auto root = game.refute(P0, Q0, cfg.depth);
    if (!root) continue;
    DistinguishingWitness w;
    w.pre = as_subst(m);
    w.root = root;
    const WitnessNode* node = root.get();
    const WitnessNode* last = node;
    while (node) {
      last = node;
      TraceStep step{node->side, node->challenge, node->sigma, std::nullopt, {}};
      if (!node->replies.empty()) {
        step.reply = node->replies.front().label;
        step.rho = node->replies.front().rho;
      }
      w.trace.push_back(std::move(step));
      node = node->replies.empty() ? nullptr : node->replies.front().refutation.get();
    }
    std::ostringstream v;
    v << "the " << side_name(last->side) << " challenge " << to_string(last->challenge);
    if (!last->sigma.empty()) v << " under " << to_string(last->sigma);
    v << " has no proper reply from the " << side_name(last->side == Side::Left ? Side::Right : Side::Left)
      << " process";
    w.verdict = v.str();
    res.bisimilar = false;
    res.witness = std::move(w);
    break;
  }
  res.pairs_explored = game.explored();
  return res;
}

namespace {

bool replay_node(Game& game, const WitnessNode& node, const Process& P, const Process& Q, std::size_t d) {
  if (node.depth > d) return false;
  if (!struct_eq(node.left, P) || !struct_eq(node.right, Q)) return false;
  const Process& A = node.side == Side::Left ? P : Q;
  const Process& Bp = node.side == Side::Left ? Q : P;
  Transition t{node.challenge, node.challenge_target};
  // The challenge must be one of A's transitions.
  TransitionKey tk = transition_key(t);
  bool found = false;
  for (const auto& u : transitions(A))
    if (transition_key(u) == tk) found = true;
  if (!found) return false;
  Process At = node.sigma.empty() ? t.target : subst_proc(node.sigma, t.target);
  for (const auto& r : game.replies(t, node.sigma, Bp, game.avoid_for(P, Q))) {
    const Process& L = node.side == Side::Left ? At : r.target;
    const Process& R = node.side == Side::Left ? r.target : At;
    if (d <= 1) return false;  // a reply exists and no depth remains to refute it
    bool covered = false;
    for (const auto& rec : node.replies) {
      if (!rec.refutation) continue;
      if (struct_eq(rec.refutation->left, L) && struct_eq(rec.refutation->right, R) &&
          replay_node(game, *rec.refutation, L, R, d - 1)) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

}  // namespace

bool replay_witness(const Process& P, const Process& Q, const DistinguishingWitness& w, const BisimConfig& cfg) {
  if (!w.root) return false;
  std::map<Name, Name> m = as_map(w.pre);
  Process P0 = m.empty() ? P : rename_free(P, m);
  Process Q0 = m.empty() ? Q : rename_free(Q, m);
  Game game(cfg, default_pool(P, Q, cfg));
  return replay_node(game, *w.root, P0, Q0, cfg.depth);
}

std::string to_string(const DistinguishingWitness& w, const PrintOptions& opts) {
  std::ostringstream out;
  if (!w.pre.empty()) out << "pre-substitution " << to_string(w.pre, opts) << "\n";
  std::size_t i = 1;
  for (const auto& s : w.trace) {
    out << i++ << ". " << side_name(s.side) << " challenges " << to_string(s.challenge, opts);
    if (!s.sigma.empty()) out << " with " << to_string(s.sigma, opts);
    out << "\n";
    if (s.reply) {
      out << "   " << side_name(s.side == Side::Left ? Side::Right : Side::Left) << " replies "
          << to_string(*s.reply, opts);
      if (!s.rho.empty()) out << " with " << to_string(s.rho, opts);
      out << "\n";
    }
  }
  out << "verdict: " << w.verdict << "\n";
  return out.str();
}

}  // namespace cpc
