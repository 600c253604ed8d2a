#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cpc/name.hpp"

namespace cpc {

// Immutable pattern tree. Copies share structure.
class Pattern {
 public:
  enum class Kind : std::uint8_t { Binding, Variable, Protected, Compound };

  static Pattern binding(Name n);
  static Pattern variable(Name n);
  static Pattern protected_name(Name n);
  static Pattern compound(Pattern left, Pattern right);

  Kind kind() const { return node_->kind; }
  bool is_atom() const { return node_->kind != Kind::Compound; }
  bool is_compound() const { return node_->kind == Kind::Compound; }

  // Atoms only.
  Name name() const { return node_->name; }
  // Compounds only.
  const Pattern& left() const { return *node_->left; }
  const Pattern& right() const { return *node_->right; }

  std::size_t hash() const { return node_->hash; }
  std::size_t size() const { return node_->size; }
  std::size_t depth() const { return node_->depth; }
  // Cached: no binding and no protected names anywhere.
  bool communicable() const { return node_->communicable; }
  // Cached: no variable or protected names anywhere.
  bool closed() const { return node_->closed; }

  friend bool operator==(const Pattern& a, const Pattern& b);

 private:
  struct Node {
    Kind kind;
    Name name;
    std::unique_ptr<Pattern> left, right;
    std::size_t hash = 0;
    std::size_t size = 1;
    std::size_t depth = 0;
    bool communicable = true;
    bool closed = true;
  };
  explicit Pattern(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Pattern atom(Kind k, Name n);

  std::shared_ptr<const Node> node_;
};

// Left-associative fold: compound_of({a, b, c}) = (a . b) . c.
Pattern compound_of(const std::vector<Pattern>& parts);

struct NameClasses {
  NameSet variable;
  NameSet protected_;
  NameSet binding;
};

NameClasses classify_names(const Pattern& p);
NameSet free_names(const Pattern& p);
NameSet binding_names(const Pattern& p);
// Binding names in left-to-right order of occurrence.
std::vector<Name> binding_names_ordered(const Pattern& p);
bool is_well_formed(const Pattern& p);
bool is_communicable(const Pattern& p);
Pattern protect(const Pattern& p);

// Finite map from names to communicable patterns.
class Substitution {
 public:
  using Map = std::map<Name, Pattern>;

  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const Name, Pattern>> init);

  static Substitution identity_on(const NameSet& names);

  // Throws std::invalid_argument when the pattern is not communicable.
  void set(Name x, Pattern p);
  const Pattern* get(Name x) const;
  bool contains(Name x) const { return map_.count(x) != 0; }
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }

  NameSet domain() const;
  // Free names of the range.
  NameSet range_names() const;
  // dom ∪ fn(range).
  NameSet names() const;

  Substitution without(const NameSet& names) const;
  Substitution restricted_to(const NameSet& names) const;

  // Disjoint union. Throws std::logic_error on overlapping domains.
  static Substitution disjoint_union(const Substitution& a, const Substitution& b);

  const Map& map() const { return map_; }
  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }

  friend bool operator==(const Substitution& a, const Substitution& b) { return a.map_ == b.map_; }

 private:
  Map map_;
};

Pattern apply_subst(const Substitution& s, const Pattern& p);
Pattern apply_subst_binding(const Substitution& s, const Pattern& p);

// Renames binding names only; variables and protected names are untouched.
Pattern rename_binders(const Pattern& p, const std::map<Name, Name>& renaming);
// Renames every occurrence of the given names regardless of form.
Pattern rename_all(const Pattern& p, const std::map<Name, Name>& renaming);

struct UnifyResult {
  Substitution left;
  Substitution right;
  friend bool operator==(const UnifyResult&, const UnifyResult&) = default;
};

// Symmetric unification. Absent when undefined.
// Throws std::invalid_argument if either side is ill-formed.
std::optional<UnifyResult> unify(const Pattern& p, const Pattern& q);

struct Match {
  Pattern pattern;
  Substitution subst;
};

bool is_valid_match(const Match& m);

// The substitution rho making (p, sigma) compatible with q, if any.
std::optional<Substitution> compat_reply(const Pattern& p, const Substitution& sigma, const Pattern& q);

bool compat(const Match& m1, const Match& m2);

// x -> theta(sigma(x)) for x in dom(sigma).
Substitution compose_limited(const Substitution& theta, const Substitution& sigma);

Pattern maximal_pattern(const Pattern& p);

}  // namespace cpc

template <>
struct std::hash<cpc::Pattern> {
  std::size_t operator()(const cpc::Pattern& p) const noexcept { return p.hash(); }
};
