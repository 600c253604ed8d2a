#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cpc/congruence.hpp"

namespace cpc {

// An unguarded case made available by rearranging a thread, possibly after
// unfolding replications. `residual` is whatever the rearrangement leaves
// beside the case, and `restricted` the names hoisted out of unfolded copies.
struct Exposure {
  std::vector<Name> restricted;
  Pattern pattern;
  Process body;
  std::vector<Process> residual;
};

std::vector<Exposure> exposures(const Process& thread);

// One interaction: the two unified patterns, their substitutions and the
// resulting process.
struct Redex {
  Pattern left_pattern;
  Pattern right_pattern;
  UnifyResult unifier;
  Process result;
  std::string key;  // canonical key of result
};

// Every one-step interaction, one representative per ≡-class of result,
// sorted by canonical key.
std::vector<Redex> redexes(const Process& P);
std::vector<Process> reductions(const Process& P);

struct Barb {
  NameSet names;
  friend auto operator<=>(const Barb&, const Barb&) = default;
};

std::vector<Barb> barbs(const Process& P);

// P ≡ P' | ok, replication included.
bool has_success(const Process& P);

// Some reduction sequence of length <= depth reaches a successful state.
bool succeeds(const Process& P, std::size_t depth);

// Drops restricted groups that can never fire: every thread mentioning the
// name n is a case protecting n, and no two of them unify.
Process prune_dead(const Process& P);

}  // namespace cpc
