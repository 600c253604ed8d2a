#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cpc/reduction.hpp"

namespace cpc {

struct StateGraph {
  struct State {
    Process proc;
    std::string key;
    std::size_t depth = 0;  // BFS distance from the start
    bool success = false;
    bool expanded = false;  // false when cut off by the step or state bound
    bool terminal = false;  // expanded and without reductions
  };
  struct Edge {
    std::size_t from = 0, to = 0;
    Redex redex;
  };

  std::vector<State> states;  // states[0] is the start
  std::vector<Edge> edges;
  bool truncated = false;  // some state was left unexpanded

  std::vector<std::size_t> successors(std::size_t s) const;
};

// Breadth-first reachable states up to `max_steps` reductions from P.
StateGraph explore(const Process& P, std::size_t max_steps, std::size_t max_states = 100000);

// Lengths of all maximal traces (paths from the start ending in a terminal
// state). Absent if the graph is truncated or has a cycle.
std::optional<std::set<std::size_t>> maximal_trace_lengths(const StateGraph& g);

struct TraceEvent {
  std::size_t step = 0;
  Pattern left, right;
  UnifyResult unifier;
  std::string key;  // canonical key of the resulting state
  Process state;
};

struct RunResult {
  std::vector<TraceEvent> events;
  Process final;
  bool deadlocked = false;  // stopped because no reduction was possible
};

// One trace choosing uniformly among redexes (sorted by key) with a seeded
// generator; deterministic for a given seed.
RunResult random_run(const Process& P, std::uint64_t seed, std::size_t max_steps);

// Re-applies each event by looking up its resulting key among the redexes of
// the current state. True if every step is found.
bool replay(const Process& P, const std::vector<TraceEvent>& events);

}  // namespace cpc
