#include "cpc/pattern.hpp"

#include <algorithm>

namespace cpc {

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

}  // namespace

Pattern Pattern::atom(Kind k, Name n) {
  auto node = std::make_shared<Node>();
  node->kind = k;
  node->name = n;
  node->hash = mix(static_cast<std::size_t>(k) + 1, std::hash<Name>{}(n));
  node->communicable = (k == Kind::Variable);
  node->closed = (k == Kind::Binding);
  return Pattern(std::move(node));
}

Pattern Pattern::binding(Name n) { return atom(Kind::Binding, n); }
Pattern Pattern::variable(Name n) { return atom(Kind::Variable, n); }
Pattern Pattern::protected_name(Name n) { return atom(Kind::Protected, n); }

Pattern Pattern::compound(Pattern left, Pattern right) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Compound;
  node->hash = mix(mix(7, left.hash()), right.hash());
  node->size = left.size() + right.size() + 1;
  node->depth = std::max(left.depth(), right.depth()) + 1;
  node->communicable = left.communicable() && right.communicable();
  node->closed = left.closed() && right.closed();
  node->left = std::make_unique<Pattern>(std::move(left));
  node->right = std::make_unique<Pattern>(std::move(right));
  return Pattern(std::move(node));
}

bool operator==(const Pattern& a, const Pattern& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  if (a.is_atom()) return a.name() == b.name();
  return a.left() == b.left() && a.right() == b.right();
}

Pattern compound_of(const std::vector<Pattern>& parts) {
  if (parts.empty()) throw std::invalid_argument("compound_of: empty");
  Pattern acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Pattern::compound(acc, parts[i]);
  return acc;
}

namespace {

void classify_into(const Pattern& p, NameClasses& out) {
  switch (p.kind()) {
    case Pattern::Kind::Binding:
      out.binding.insert(p.name());
      break;
    case Pattern::Kind::Variable:
      out.variable.insert(p.name());
      break;
    case Pattern::Kind::Protected:
      out.protected_.insert(p.name());
      break;
    case Pattern::Kind::Compound:
      classify_into(p.left(), out);
      classify_into(p.right(), out);
      break;
  }
}

void binders_into(const Pattern& p, std::vector<Name>& out) {
  if (p.kind() == Pattern::Kind::Binding) {
    out.push_back(p.name());
  } else if (p.is_compound()) {
    binders_into(p.left(), out);
    binders_into(p.right(), out);
  }
}

}  // namespace

NameClasses classify_names(const Pattern& p) {
  NameClasses out;
  classify_into(p, out);
  return out;
}

NameSet free_names(const Pattern& p) {
  auto c = classify_names(p);
  return set_union(c.variable, c.protected_);
}

NameSet binding_names(const Pattern& p) { return classify_names(p).binding; }

std::vector<Name> binding_names_ordered(const Pattern& p) {
  std::vector<Name> out;
  binders_into(p, out);
  return out;
}

bool is_well_formed(const Pattern& p) {
  if (p.is_atom()) return true;
  auto order = binding_names_ordered(p);
  NameSet seen(order.begin(), order.end());
  if (seen.size() != order.size()) return false;
  return !intersects(seen, free_names(p));
}

bool is_communicable(const Pattern& p) { return p.communicable(); }

Pattern protect(const Pattern& p) {
  if (!p.communicable()) throw std::invalid_argument("protect requires communicable pattern");
  if (p.is_atom()) return Pattern::protected_name(p.name());
  return Pattern::compound(protect(p.left()), protect(p.right()));
}

// --- Substitution ---------------------------------------------------------

Substitution::Substitution(std::initializer_list<std::pair<const Name, Pattern>> init) {
  for (const auto& [k, v] : init) set(k, v);
}

Substitution Substitution::identity_on(const NameSet& names) {
  Substitution s;
  for (Name n : names) s.set(n, Pattern::variable(n));
  return s;
}

void Substitution::set(Name x, Pattern p) {
  if (!p.communicable()) throw std::invalid_argument("substitution range must be communicable");
  map_.insert_or_assign(x, std::move(p));
}

const Pattern* Substitution::get(Name x) const {
  auto it = map_.find(x);
  return it == map_.end() ? nullptr : &it->second;
}

NameSet Substitution::domain() const {
  NameSet out;
  for (const auto& kv : map_) out.insert(kv.first);
  return out;
}

NameSet Substitution::range_names() const {
  NameSet out;
  for (const auto& kv : map_) {
    auto f = free_names(kv.second);
    out.insert(f.begin(), f.end());
  }
  return out;
}

NameSet Substitution::names() const { return set_union(domain(), range_names()); }

Substitution Substitution::without(const NameSet& names) const {
  Substitution out;
  for (const auto& kv : map_)
    if (!names.count(kv.first)) out.map_.insert(kv);
  return out;
}

Substitution Substitution::restricted_to(const NameSet& names) const {
  Substitution out;
  for (const auto& kv : map_)
    if (names.count(kv.first)) out.map_.insert(kv);
  return out;
}

Substitution Substitution::disjoint_union(const Substitution& a, const Substitution& b) {
  Substitution out = a;
  for (const auto& kv : b.map_) {
    if (!out.map_.insert(kv).second)
      throw std::logic_error("substitution union: overlapping domains on " + kv.first.text());
  }
  return out;
}

Pattern apply_subst(const Substitution& s, const Pattern& p) {
  if (s.empty()) return p;
  switch (p.kind()) {
    case Pattern::Kind::Binding:
      return p;
    case Pattern::Kind::Variable:
      if (auto* v = s.get(p.name())) return *v;
      return p;
    case Pattern::Kind::Protected:
      if (auto* v = s.get(p.name())) return protect(*v);
      return p;
    case Pattern::Kind::Compound: {
      Pattern l = apply_subst(s, p.left());
      Pattern r = apply_subst(s, p.right());
      return Pattern::compound(std::move(l), std::move(r));
    }
  }
  return p;
}

Pattern apply_subst_binding(const Substitution& s, const Pattern& p) {
  if (s.empty()) return p;
  switch (p.kind()) {
    case Pattern::Kind::Binding:
      if (auto* v = s.get(p.name())) return *v;
      return p;
    case Pattern::Kind::Variable:
    case Pattern::Kind::Protected:
      return p;
    case Pattern::Kind::Compound:
      return Pattern::compound(apply_subst_binding(s, p.left()), apply_subst_binding(s, p.right()));
  }
  return p;
}

Pattern rename_binders(const Pattern& p, const std::map<Name, Name>& renaming) {
  if (renaming.empty()) return p;
  switch (p.kind()) {
    case Pattern::Kind::Binding: {
      auto it = renaming.find(p.name());
      return it == renaming.end() ? p : Pattern::binding(it->second);
    }
    case Pattern::Kind::Variable:
    case Pattern::Kind::Protected:
      return p;
    case Pattern::Kind::Compound:
      return Pattern::compound(rename_binders(p.left(), renaming), rename_binders(p.right(), renaming));
  }
  return p;
}

Pattern rename_all(const Pattern& p, const std::map<Name, Name>& renaming) {
  if (renaming.empty()) return p;
  if (p.is_compound())
    return Pattern::compound(rename_all(p.left(), renaming), rename_all(p.right(), renaming));
  auto it = renaming.find(p.name());
  if (it == renaming.end()) return p;
  switch (p.kind()) {
    case Pattern::Kind::Binding:
      return Pattern::binding(it->second);
    case Pattern::Kind::Variable:
      return Pattern::variable(it->second);
    default:
      return Pattern::protected_name(it->second);
  }
}

// --- Unification ----------------------------------------------------------

namespace {

bool unify_into(const Pattern& p, const Pattern& q, Substitution& left, Substitution& right) {
  using K = Pattern::Kind;
  if (p.kind() == K::Binding) {
    if (!q.communicable()) return false;
    left = Substitution::disjoint_union(left, Substitution{{p.name(), q}});
    return true;
  }
  if (q.kind() == K::Binding) {
    if (!p.communicable()) return false;
    right = Substitution::disjoint_union(right, Substitution{{q.name(), p}});
    return true;
  }
  if (p.is_compound() && q.is_compound()) {
    return unify_into(p.left(), q.left(), left, right) && unify_into(p.right(), q.right(), left, right);
  }
  if (p.is_atom() && q.is_atom()) return p.name() == q.name();
  return false;
}

}  // namespace

std::optional<UnifyResult> unify(const Pattern& p, const Pattern& q) {
  if (!is_well_formed(p) || !is_well_formed(q)) throw std::invalid_argument("unify: ill-formed pattern");
  // Each side accumulates into its own substitution, so binders shared
  // between p and q never meet in one domain.
  UnifyResult r;
  if (!unify_into(p, q, r.left, r.right)) return std::nullopt;
  return r;
}

// --- Compatibility --------------------------------------------------------

bool is_valid_match(const Match& m) { return m.subst.domain() == binding_names(m.pattern); }

namespace {

bool reply_into(const Pattern& p, const Substitution& sigma, const Pattern& q, Substitution& rho) {
  using K = Pattern::Kind;
  if (q.kind() == K::Binding) {
    if (!free_names(p).empty()) return false;
    rho.set(q.name(), apply_subst_binding(sigma, p));
    return true;
  }
  if (p.is_compound() && q.is_compound()) {
    return reply_into(p.left(), sigma, q.left(), rho) && reply_into(p.right(), sigma, q.right(), rho);
  }
  if (p.is_compound() || q.is_compound()) return false;
  if (p.name() != q.name()) return false;
  if (p.kind() == K::Variable) return q.kind() == K::Variable;
  if (p.kind() == K::Protected) return q.kind() == K::Protected || q.kind() == K::Variable;
  return false;
}

}  // namespace

std::optional<Substitution> compat_reply(const Pattern& p, const Substitution& sigma, const Pattern& q) {
  Substitution rho;
  if (!reply_into(p, sigma, q, rho)) return std::nullopt;
  return rho;
}

bool compat(const Match& m1, const Match& m2) {
  auto rho = compat_reply(m1.pattern, m1.subst.restricted_to(binding_names(m1.pattern)), m2.pattern);
  return rho && *rho == m2.subst;
}

Substitution compose_limited(const Substitution& theta, const Substitution& sigma) {
  Substitution out;
  for (const auto& [x, p] : sigma) {
    Pattern img = apply_subst(theta, p);
    if (!img.communicable()) throw std::logic_error("compose_limited: non-communicable image");
    out.set(x, img);
  }
  return out;
}

Pattern maximal_pattern(const Pattern& p) {
  if (p.closed()) return Pattern::binding(Name::fresh());
  if (p.is_atom()) return Pattern::variable(p.name());
  return Pattern::compound(maximal_pattern(p.left()), maximal_pattern(p.right()));
}

}  // namespace cpc
