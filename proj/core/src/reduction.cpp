#include "cpc/reduction.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace cpc {

namespace {

// Exposures inside one fresh copy of a replicated body, without the
// replicated thread itself in the residual.
std::vector<Exposure> copy_exposures(const Process& body) {
  Flat flat = flatten(body);
  std::vector<Exposure> out;
  for (std::size_t i = 0; i < flat.threads.size(); ++i) {
    for (auto& e : exposures(flat.threads[i])) {
      Exposure x{flat.restricted, e.pattern, e.body, {}};
      x.restricted.insert(x.restricted.end(), e.restricted.begin(), e.restricted.end());
      for (std::size_t j = 0; j < flat.threads.size(); ++j)
        if (j != i) x.residual.push_back(flat.threads[j]);
      x.residual.insert(x.residual.end(), e.residual.begin(), e.residual.end());
      out.push_back(std::move(x));
    }
  }
  return out;
}

struct Raw {
  std::vector<Name> restricted;
  Pattern left, right;
  UnifyResult unifier;
  std::vector<Process> threads;
};

void interact(const Exposure& a, const Exposure& b, const std::vector<Process>& rest, std::vector<Raw>& out) {
  auto u = unify(a.pattern, b.pattern);
  if (!u) return;
  Raw raw{{}, a.pattern, b.pattern, *u, {}};
  raw.restricted = a.restricted;
  raw.restricted.insert(raw.restricted.end(), b.restricted.begin(), b.restricted.end());
  raw.threads.push_back(subst_proc(u->left, a.body));
  raw.threads.push_back(subst_proc(u->right, b.body));
  raw.threads.insert(raw.threads.end(), a.residual.begin(), a.residual.end());
  raw.threads.insert(raw.threads.end(), b.residual.begin(), b.residual.end());
  raw.threads.insert(raw.threads.end(), rest.begin(), rest.end());
  out.push_back(std::move(raw));
}

void internal(const Process& thread, const std::vector<Process>& rest, std::vector<Raw>& out);

// Interactions among a list of threads, each paired with `rest`.
void among(const std::vector<Name>& restricted, const std::vector<Process>& threads,
           const std::vector<Process>& rest, std::vector<Raw>& out) {
  std::vector<std::vector<Exposure>> exp;
  exp.reserve(threads.size());
  for (const auto& t : threads) exp.push_back(exposures(t));

  std::size_t first = out.size();
  for (std::size_t i = 0; i < threads.size(); ++i) {
    for (std::size_t j = i + 1; j < threads.size(); ++j) {
      std::vector<Process> others = rest;
      for (std::size_t k = 0; k < threads.size(); ++k)
        if (k != i && k != j) others.push_back(threads[k]);
      for (const auto& a : exp[i])
        for (const auto& b : exp[j]) interact(a, b, others, out);
    }
  }
  for (std::size_t i = 0; i < threads.size(); ++i) {
    std::vector<Process> others = rest;
    for (std::size_t k = 0; k < threads.size(); ++k)
      if (k != i) others.push_back(threads[k]);
    internal(threads[i], others, out);
  }
  for (std::size_t k = first; k < out.size(); ++k)
    out[k].restricted.insert(out[k].restricted.begin(), restricted.begin(), restricted.end());
}

// Interactions that happen entirely inside one thread: only replication
// allows that, either between two copies or inside one copy.
void internal(const Process& thread, const std::vector<Process>& rest, std::vector<Raw>& out) {
  if (!thread.is(Process::Kind::Replicate)) return;
  std::vector<Process> with_rep = rest;
  with_rep.push_back(thread);

  auto first = copy_exposures(thread.body());
  auto second = copy_exposures(thread.body());
  for (std::size_t i = 0; i < first.size(); ++i)
    for (std::size_t j = i; j < second.size(); ++j) interact(first[i], second[j], with_rep, out);

  Flat copy = flatten(thread.body());
  among(copy.restricted, copy.threads, with_rep, out);
}

std::vector<Raw> raw_redexes(const Process& P) {
  Flat flat = flatten(P);
  std::vector<Raw> out;
  among(flat.restricted, flat.threads, {}, out);
  return out;
}

}  // namespace

std::vector<Exposure> exposures(const Process& thread) {
  switch (thread.kind()) {
    case Process::Kind::Case:
      return {Exposure{{}, thread.pattern(), thread.body(), {}}};
    case Process::Kind::Replicate: {
      auto out = copy_exposures(thread.body());
      for (auto& e : out) e.residual.push_back(thread);
      return out;
    }
    case Process::Kind::Null:
    case Process::Kind::Success:
      return {};
    default: {
      // Not a thread; flatten first.
      Flat flat = flatten(thread);
      std::vector<Exposure> out;
      for (std::size_t i = 0; i < flat.threads.size(); ++i) {
        for (auto& e : exposures(flat.threads[i])) {
          e.restricted.insert(e.restricted.begin(), flat.restricted.begin(), flat.restricted.end());
          for (std::size_t j = 0; j < flat.threads.size(); ++j)
            if (j != i) e.residual.push_back(flat.threads[j]);
          out.push_back(std::move(e));
        }
      }
      return out;
    }
  }
}

std::vector<Redex> redexes(const Process& P) {
  std::map<std::string, Redex> unique;
  for (auto& raw : raw_redexes(P)) {
    Process result = Process::restrict_all(raw.restricted, Process::par_of(raw.threads));
    auto cf = canonicalize(result);
    if (unique.count(cf.key)) continue;
    unique.emplace(cf.key, Redex{raw.left, raw.right, raw.unifier, cf.to_process(), cf.key});
  }
  std::vector<Redex> out;
  out.reserve(unique.size());
  for (auto& kv : unique) out.push_back(std::move(kv.second));
  return out;
}

std::vector<Process> reductions(const Process& P) {
  std::vector<Process> out;
  for (auto& r : redexes(P)) out.push_back(r.result);
  return out;
}

std::vector<Barb> barbs(const Process& P) {
  std::set<Barb> out;
  Flat flat = flatten(P);
  for (const auto& t : flat.threads) {
    for (const auto& e : exposures(t)) {
      NameSet hidden(flat.restricted.begin(), flat.restricted.end());
      hidden.insert(e.restricted.begin(), e.restricted.end());
      auto cls = classify_names(e.pattern);
      if (intersects(cls.protected_, hidden)) continue;
      out.insert(Barb{set_minus(free_names(e.pattern), hidden)});
    }
  }
  return {out.begin(), out.end()};
}

bool has_success(const Process& P) {
  switch (P.kind()) {
    case Process::Kind::Success:
      return true;
    case Process::Kind::Par:
      return has_success(P.left()) || has_success(P.right());
    case Process::Kind::Restrict:
    case Process::Kind::Replicate:
      return has_success(P.body());
    default:
      return false;
  }
}

bool succeeds(const Process& P, std::size_t depth) {
  std::unordered_set<std::string> seen{canonical_key(P)};
  std::vector<Process> frontier{P};
  for (std::size_t d = 0;; ++d) {
    for (const auto& s : frontier)
      if (has_success(s)) return true;
    if (d == depth) return false;
    std::vector<Process> next;
    for (const auto& s : frontier) {
      for (auto& r : redexes(s))
        if (seen.insert(r.key).second) next.push_back(r.result);
    }
    if (next.empty()) return false;
    frontier = std::move(next);
  }
}

Process prune_dead(const Process& P) {
  Flat flat = flatten(P);
  std::vector<Name> restricted = flat.restricted;
  std::vector<Process> threads = flat.threads;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t ri = 0; ri < restricted.size(); ++ri) {
      Name n = restricted[ri];
      std::vector<std::size_t> group;
      bool dead = true;
      for (std::size_t i = 0; i < threads.size() && dead; ++i) {
        if (!threads[i].free_names().count(n)) continue;
        group.push_back(i);
        dead = threads[i].is(Process::Kind::Case) && classify_names(threads[i].pattern()).protected_.count(n);
      }
      if (!dead) continue;
      for (std::size_t a = 0; a < group.size() && dead; ++a)
        for (std::size_t b = a + 1; b < group.size() && dead; ++b)
          if (unify(threads[group[a]].pattern(), threads[group[b]].pattern())) dead = false;
      if (!dead) continue;
      for (std::size_t k = group.size(); k-- > 0;) threads.erase(threads.begin() + static_cast<std::ptrdiff_t>(group[k]));
      restricted.erase(restricted.begin() + static_cast<std::ptrdiff_t>(ri));
      changed = true;
      break;
    }
  }
  return Process::restrict_all(restricted, Process::par_of(threads));
}

}  // namespace cpc
