#include "cpc/process.hpp"

#include <algorithm>

#include <functional>

namespace cpc {

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

}  // namespace

Process Process::null() {
  static const Process p = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Null;
    n->hash = 11;
    return Process(std::move(n));
  }();
  return p;
}

Process::Process() : node_(null().node_) {}

Process Process::success() {
  static const Process p = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Success;
    n->hash = 13;
    return Process(std::move(n));
  }();
  return p;
}

Process Process::case_of(Pattern p, Process body) {
  if (!is_well_formed(p)) throw std::invalid_argument("case pattern is not well-formed");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Case;
  n->fn = set_union(cpc::free_names(p), set_minus(body.free_names(), binding_names(p)));
  n->size = 1 + body.size();
  n->hash = mix(mix(17, p.hash()), body.node_->hash);
  n->pattern = std::make_unique<Pattern>(std::move(p));
  n->left = std::make_unique<Process>(std::move(body));
  return Process(std::move(n));
}

Process Process::par(Process left, Process right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Par;
  n->fn = set_union(left.free_names(), right.free_names());
  n->size = 1 + left.size() + right.size();
  n->hash = mix(mix(19, left.node_->hash), right.node_->hash);
  n->left = std::make_unique<Process>(std::move(left));
  n->right = std::make_unique<Process>(std::move(right));
  return Process(std::move(n));
}

Process Process::replicate(Process body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Replicate;
  n->fn = body.free_names();
  n->size = 1 + body.size();
  n->hash = mix(23, body.node_->hash);
  n->left = std::make_unique<Process>(std::move(body));
  return Process(std::move(n));
}

Process Process::restrict(Name name, Process body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Restrict;
  n->name = name;
  n->fn = body.free_names();
  n->fn.erase(name);
  n->size = 1 + body.size();
  n->hash = mix(mix(29, std::hash<Name>{}(name)), body.node_->hash);
  n->left = std::make_unique<Process>(std::move(body));
  return Process(std::move(n));
}

Process Process::par_of(const std::vector<Process>& parts) {
  if (parts.empty()) return null();
  Process acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = par(parts[i], acc);
  return acc;
}

Process Process::restrict_all(const std::vector<Name>& names, Process body) {
  for (std::size_t i = names.size(); i-- > 0;) body = restrict(names[i], body);
  return body;
}

bool operator==(const Process& a, const Process& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Process::Kind::Null:
    case Process::Kind::Success:
      return true;
    case Process::Kind::Case:
      return a.pattern() == b.pattern() && a.body() == b.body();
    case Process::Kind::Par:
      return a.left() == b.left() && a.right() == b.right();
    case Process::Kind::Replicate:
      return a.body() == b.body();
    case Process::Kind::Restrict:
      return a.name() == b.name() && a.body() == b.body();
  }
  return false;
}

NameSet free_names_proc(const Process& P) { return P.free_names(); }

namespace {

void bound_into(const Process& P, NameSet& out) {
  switch (P.kind()) {
    case Process::Kind::Null:
    case Process::Kind::Success:
      return;
    case Process::Kind::Case: {
      auto b = binding_names(P.pattern());
      out.insert(b.begin(), b.end());
      bound_into(P.body(), out);
      return;
    }
    case Process::Kind::Par:
      bound_into(P.left(), out);
      bound_into(P.right(), out);
      return;
    case Process::Kind::Replicate:
      bound_into(P.body(), out);
      return;
    case Process::Kind::Restrict:
      out.insert(P.name());
      bound_into(P.body(), out);
      return;
  }
}

Substitution renaming_subst(const std::map<Name, Name>& r) {
  Substitution s;
  for (const auto& [from, to] : r) s.set(from, Pattern::variable(to));
  return s;
}

}  // namespace

NameSet bound_names_proc(const Process& P) {
  NameSet out;
  bound_into(P, out);
  return out;
}

namespace {

// `range` is s.range_names(), carried down so it is only recomputed when a
// binder shrinks the domain.
Process subst_rec(const Substitution& s, const NameSet& range, const Process& P) {
  bool touches = false;
  for (const auto& kv : s) {
    if (P.free_names().count(kv.first)) {
      touches = true;
      break;
    }
  }
  if (!touches) return P;

  switch (P.kind()) {
    case Process::Kind::Null:
    case Process::Kind::Success:
      return P;
    case Process::Kind::Par:
      return Process::par(subst_rec(s, range, P.left()), subst_rec(s, range, P.right()));
    case Process::Kind::Replicate:
      return Process::replicate(subst_rec(s, range, P.body()));
    case Process::Kind::Restrict: {
      Name n = P.name();
      Process body = P.body();
      if (s.contains(n)) {
        Substitution inner = s.without({n});
        NameSet inner_range = inner.range_names();
        if (inner_range.count(n)) {
          Name m = Name::fresh();
          body = subst_proc(Substitution{{n, Pattern::variable(m)}}, body);
          n = m;
        }
        return Process::restrict(n, subst_rec(inner, inner_range, body));
      }
      if (range.count(n)) {
        Name m = Name::fresh();
        body = subst_proc(Substitution{{n, Pattern::variable(m)}}, body);
        n = m;
      }
      return Process::restrict(n, subst_rec(s, range, body));
    }
    case Process::Kind::Case: {
      Pattern p = P.pattern();
      Process body = P.body();
      NameSet bn = binding_names(p);
      const Substitution* inner = &s;
      const NameSet* inner_range = &range;
      Substitution shrunk;
      NameSet shrunk_range;
      if (std::any_of(bn.begin(), bn.end(), [&](Name b) { return s.contains(b); })) {
        shrunk = s.without(bn);
        shrunk_range = shrunk.range_names();
        inner = &shrunk;
        inner_range = &shrunk_range;
      }
      std::map<Name, Name> clash;
      for (Name b : bn)
        if (inner_range->count(b)) clash.emplace(b, Name::fresh());
      if (!clash.empty()) {
        p = rename_binders(p, clash);
        body = subst_proc(renaming_subst(clash), body);
      }
      return Process::case_of(apply_subst(*inner, p), subst_rec(*inner, *inner_range, body));
    }
  }
  return P;
}

}  // namespace

Process subst_proc(const Substitution& s, const Process& P) {
  if (s.empty()) return P;
  return subst_rec(s, s.range_names(), P);
}

Process rename_free(const Process& P, const std::map<Name, Name>& renaming) {
  return subst_proc(renaming_subst(renaming), P);
}

Process alpha_rename(const Process& P) {
  switch (P.kind()) {
    case Process::Kind::Null:
    case Process::Kind::Success:
      return P;
    case Process::Kind::Par:
      return Process::par(alpha_rename(P.left()), alpha_rename(P.right()));
    case Process::Kind::Replicate:
      return Process::replicate(alpha_rename(P.body()));
    case Process::Kind::Restrict: {
      Name m = Name::fresh();
      return Process::restrict(m, alpha_rename(rename_free(P.body(), {{P.name(), m}})));
    }
    case Process::Kind::Case: {
      std::map<Name, Name> r;
      for (Name b : binding_names_ordered(P.pattern())) r.emplace(b, Name::fresh());
      return Process::case_of(rename_binders(P.pattern(), r), alpha_rename(rename_free(P.body(), r)));
    }
  }
  return P;
}

}  // namespace cpc
