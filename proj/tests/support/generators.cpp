#include "generators.hpp"

#include <algorithm>
#include <string>

namespace cpc::testing {

namespace {

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Pattern gen_pattern(Rng& rng, const std::vector<Name>& pool, const std::vector<Name>& binders, int depth,
                    bool allow_binders, bool allow_protected) {
  if (depth > 0 && coin(rng, 0.4)) {
    Pattern l = gen_pattern(rng, pool, binders, depth - 1, allow_binders, allow_protected);
    Pattern r = gen_pattern(rng, pool, binders, depth - 1, allow_binders, allow_protected);
    return Pattern::compound(l, r);
  }
  int choice = std::uniform_int_distribution<int>(0, 2)(rng);
  if (choice == 0 && allow_binders) return Pattern::binding(pick(rng, binders));
  if (choice == 1 && allow_protected) return Pattern::protected_name(pick(rng, pool));
  return Pattern::variable(pick(rng, pool));
}

void enumerate(const std::vector<Pattern>& atoms, int depth, std::vector<Pattern>& out) {
  if (depth == 0) {
    out = atoms;
    return;
  }
  std::vector<Pattern> smaller;
  enumerate(atoms, depth - 1, smaller);
  out = smaller;
  for (const auto& l : smaller)
    for (const auto& r : smaller)
      if (std::max(l.depth(), r.depth()) + 1 == static_cast<std::size_t>(depth)) out.push_back(Pattern::compound(l, r));
}

}  // namespace

std::vector<Name> names(std::initializer_list<const char*> texts) {
  std::vector<Name> out;
  for (const char* t : texts) out.push_back(Name::surface(t));
  return out;
}

Pattern random_pattern(Rng& rng, const std::vector<Name>& pool, int max_depth) {
  return gen_pattern(rng, pool, pool, max_depth, true, true);
}

Pattern random_wf_pattern(Rng& rng, const std::vector<Name>& pool, const std::vector<Name>& binders, int max_depth) {
  std::vector<Name> all_binders = pool;
  all_binders.insert(all_binders.end(), binders.begin(), binders.end());
  for (;;) {
    Pattern p = gen_pattern(rng, pool, all_binders, max_depth, true, true);
    if (is_well_formed(p)) return p;
  }
}

Pattern random_communicable(Rng& rng, const std::vector<Name>& pool, int max_depth) {
  return gen_pattern(rng, pool, pool, max_depth, false, false);
}

std::vector<Pattern> all_patterns(const std::vector<Name>& pool, const std::vector<Name>& binders, int depth,
                                  bool well_formed_only) {
  std::vector<Pattern> atoms;
  for (Name n : pool) {
    atoms.push_back(Pattern::variable(n));
    atoms.push_back(Pattern::protected_name(n));
  }
  for (Name b : binders) atoms.push_back(Pattern::binding(b));
  std::vector<Pattern> all;
  enumerate(atoms, depth, all);
  if (!well_formed_only) return all;
  std::vector<Pattern> out;
  for (auto& p : all)
    if (is_well_formed(p)) out.push_back(p);
  return out;
}

std::vector<Pattern> all_communicable(const std::vector<Name>& pool, int depth) {
  std::vector<Pattern> atoms;
  for (Name n : pool) atoms.push_back(Pattern::variable(n));
  std::vector<Pattern> out;
  enumerate(atoms, depth, out);
  return out;
}

namespace {

struct ProcGen {
  Rng& rng;
  std::vector<Name> pool;
  std::vector<Name> binder_names;
  int counter = 0;
  std::vector<Pattern> menu;

  Pattern atom(const std::vector<Name>& scope) {
    int r = std::uniform_int_distribution<int>(0, 19)(rng);
    if (r < 8) return Pattern::binding(pick(rng, binder_names));
    if (r < 17) return Pattern::variable(pick(rng, scope));
    return Pattern::protected_name(pick(rng, scope));
  }

  // Rough partner of an earlier pattern, so that generated threads interact.
  Pattern complement(const Pattern& p, const std::vector<Name>& scope) {
    if (p.is_compound()) return Pattern::compound(complement(p.left(), scope), complement(p.right(), scope));
    switch (p.kind()) {
      case Pattern::Kind::Binding:
        return Pattern::variable(pick(rng, scope));
      case Pattern::Kind::Variable:
        return coin(rng, 0.5) ? Pattern::binding(pick(rng, binder_names)) : p;
      default:
        return Pattern::variable(p.name());
    }
  }

  Pattern case_pattern(const std::vector<Name>& scope) {
    if (!menu.empty() && coin(rng, 0.7)) {
      Pattern c = complement(pick(rng, menu), scope);
      NameSet fn = free_names(c);
      bool in_scope = std::all_of(fn.begin(), fn.end(),
                                  [&](Name n) { return std::find(scope.begin(), scope.end(), n) != scope.end(); });
      if (in_scope && is_well_formed(c)) return c;
    }
    for (;;) {
      Pattern p = coin(rng, 0.35) ? Pattern::compound(atom(scope), atom(scope)) : atom(scope);
      if (is_well_formed(p)) {
        menu.push_back(p);
        return p;
      }
    }
  }

  Process gen(std::size_t budget, std::vector<Name> scope) {
    if (budget <= 1) return coin(rng, 0.3) ? Process::success() : Process::null();
    if (budget == 2 && coin(rng, 0.9)) {
      Pattern p = case_pattern(scope);
      return Process::case_of(p, coin(rng, 0.5) ? Process::success() : Process::null());
    }
    int choice = std::uniform_int_distribution<int>(0, 19)(rng);
    if (choice < 5) {
      Pattern p = case_pattern(scope);
      for (Name b : binding_names(p)) scope.push_back(b);
      return Process::case_of(p, gen(budget - 1, scope));
    }
    if (choice < 15 && budget >= 3) {
      std::size_t lo = budget >= 5 ? 2 : 1;
      std::size_t left = std::uniform_int_distribution<std::size_t>(lo, budget - 1 - lo)(rng);
      return Process::par(gen(left, scope), gen(budget - 1 - left, scope));
    }
    if (choice < 16) return Process::replicate(gen(budget - 1, scope));
    if (choice < 18) {
      Name n = Name::surface("r" + std::to_string(counter++ % 2));
      scope.push_back(n);
      return Process::restrict(n, gen(budget - 1, scope));
    }
    Pattern p = case_pattern(scope);
    return Process::case_of(p, coin(rng, 0.5) ? Process::success() : Process::null());
  }
};

}  // namespace

Process random_process(Rng& rng, const std::vector<Name>& pool, std::size_t max_size) {
  ProcGen g{rng, pool, names({"x", "y"})};
  std::size_t budget = std::uniform_int_distribution<std::size_t>((max_size + 1) / 2, max_size)(rng);
  if (budget >= 5 && coin(rng, 0.6)) {
    std::size_t left = (budget - 1) / 2;
    Process a = g.gen(left, pool);
    return Process::par(a, g.gen(budget - 1 - left, pool));
  }
  return g.gen(budget, pool);
}

Substitution random_match_subst(Rng& rng, const Pattern& p, const std::vector<Name>& pool, int max_depth) {
  Substitution s;
  for (Name b : binding_names(p)) s.set(b, random_communicable(rng, pool, max_depth));
  return s;
}

Pattern random_generalization(Rng& rng, const Pattern& p, int& counter) {
  if (p.closed() && coin(rng, 0.4)) return Pattern::binding(Name::surface("g" + std::to_string(counter++)));
  switch (p.kind()) {
    case Pattern::Kind::Protected:
      return coin(rng, 0.5) ? Pattern::variable(p.name()) : p;
    case Pattern::Kind::Compound:
      return Pattern::compound(random_generalization(rng, p.left(), counter),
                               random_generalization(rng, p.right(), counter));
    default:
      return p;
  }
}

}  // namespace cpc::testing
