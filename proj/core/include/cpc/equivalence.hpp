#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cpc/lts.hpp"

namespace cpc {

// ---------------------------------------------------------------------------
// Reply-context machinery

using NamePairs = std::vector<std::pair<Name, Name>>;

struct Specification {
  Pattern complementary;
  NamePairs free_expect;  // (binder of complementary, expected free name)
  NamePairs rest_expect;  // (binder of complementary, expected restricted name)
};

// Minted binders are fresh names.
Specification spec(const NameSet& N, const Pattern& p);

// The success and failure names shared by every gadget.
struct Reporters {
  Name w;
  Name f;
  static Reporters fresh();
};

Process build_check(Name x, Name m, Name y, Name n, Name w, const Reporters& r);
Process build_free_test(Name x, Name n, Name w);
Process build_rest_test(const NameSet& N, Name x, Name w, const Reporters& r);
Process build_equality_test(const NamePairs& R, Name x, Name m, Name w, const Reporters& r);
Process build_tests(const NameSet& N, const NamePairs& F, const NamePairs& R, const Reporters& r);
Process char_proc(const NameSet& N, const Pattern& p, const Reporters& r);

// Exhaustive exploration of a finite reduction graph, watching for barbs on
// r.w and r.f.
struct Outcome {
  bool reaches_w = false;
  bool reaches_f = false;
  std::optional<std::size_t> min_steps_to_w;
  std::size_t states = 0;
  bool complete = true;  // false if max_states was hit
  bool succeeds() const { return reaches_w && !reaches_f; }
};

Outcome explore_outcome(const Process& P, const Reporters& r, std::size_t max_states = 200000);

// Steps for tests^N_{F,R} to become successful, from the closed formula.
std::size_t tests_step_count(const NamePairs& F, const NamePairs& R);

// ---------------------------------------------------------------------------
// Bounded bisimulation

struct BisimConfig {
  std::size_t depth = 3;
  // Empty means fn(P) ∪ fn(Q) plus two fresh names.
  std::vector<Name> name_pool;
  std::size_t instantiation_depth = 1;
  // Run the pre-round of free-name substitutions into the pool.
  bool substitution_round = true;
  // Pre-round maps are tried in order of how many names they move.
  std::size_t max_pre_substitutions = 4096;
};

enum class Side { Left, Right };

struct WitnessNode;

// One defender reply and the refutation of the resulting pair.
struct WitnessReply {
  Label label;
  Substitution rho;
  Process target;
  std::shared_ptr<const WitnessNode> refutation;
};

// A challenge that the defender cannot answer to the remaining depth.
struct WitnessNode {
  Side side;
  Process left, right;
  Label challenge;
  Process challenge_target;
  Substitution sigma;
  std::vector<WitnessReply> replies;  // every proper reply, each refuted
  std::size_t depth;                  // rounds left when the challenge is made
};

struct TraceStep {
  Side side;
  Label challenge;
  Substitution sigma;
  std::optional<Label> reply;
  Substitution rho;
};

struct DistinguishingWitness {
  Substitution pre;  // pre-round substitution on free names
  std::shared_ptr<const WitnessNode> root;
  std::vector<TraceStep> trace;  // follows the first reply at every node
  std::string verdict;
};

struct BisimResult {
  bool bisimilar = true;
  std::optional<DistinguishingWitness> witness;
  std::size_t pairs_explored = 0;
  std::size_t pre_substitutions = 0;
  bool pre_round_truncated = false;
};

BisimResult bounded_bisim(const Process& P, const Process& Q, const BisimConfig& cfg = {});

// Re-enumerates every defender reply along the witness tree and checks that
// each one is covered by a refutation. True if the witness holds.
bool replay_witness(const Process& P, const Process& Q, const DistinguishingWitness& w, const BisimConfig& cfg = {});

std::string to_string(const DistinguishingWitness& w, const PrintOptions& opts = {});

// Communicable patterns over `pool` up to compound depth `depth`.
std::vector<Pattern> communicable_patterns(const std::vector<Name>& pool, std::size_t depth);

}  // namespace cpc
