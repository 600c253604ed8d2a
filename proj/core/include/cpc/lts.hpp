#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cpc/congruence.hpp"
#include "cpc/printer.hpp"

namespace cpc {

// tau, or (new extruded) pattern.
struct Label {
  std::vector<Name> extruded;
  std::optional<Pattern> pattern;

  static Label tau() { return {}; }
  static Label out(std::vector<Name> extruded, Pattern p) { return {std::move(extruded), std::move(p)}; }
  bool is_tau() const { return !pattern.has_value(); }
};

struct Transition {
  Label label;
  Process target;
};

// All transitions of P, one per (α-class of label, ≡-class of target).
// Replication follows the single-unfolding pair of rules, so the result is
// finite. Bound names of every emitted label are fresh for fn(P).
std::vector<Transition> transitions(const Process& P);

// Renames bound label names (extruded and binders) that clash with `avoid`.
Transition freshen(const Transition& t, const NameSet& avoid);

struct TransitionKey {
  std::string label;
  std::string target;
  friend auto operator<=>(const TransitionKey&, const TransitionKey&) = default;
};

// Label with extruded names and binders renumbered by first occurrence, and
// the target canonicalized under the same renumbering.
TransitionKey transition_key(const Transition& t);

std::string to_string(const Label& l, const PrintOptions& opts = {});

std::size_t meas(const Process& P);

bool tau_matches_reduction(const Process& P);

}  // namespace cpc
