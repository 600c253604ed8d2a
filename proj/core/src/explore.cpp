#include "cpc/explore.hpp"

#include <deque>
#include <functional>
#include <random>
#include <unordered_map>

namespace cpc {

std::vector<std::size_t> StateGraph::successors(std::size_t s) const {
  std::vector<std::size_t> out;
  for (const auto& e : edges)
    if (e.from == s) out.push_back(e.to);
  return out;
}

StateGraph explore(const Process& P, std::size_t max_steps, std::size_t max_states) {
  StateGraph g;
  std::unordered_map<std::string, std::size_t> index;
  std::deque<std::size_t> queue;

  auto add = [&](const Process& proc, std::string key, std::size_t depth) {
    auto [it, inserted] = index.emplace(key, g.states.size());
    if (inserted) {
      g.states.push_back({proc, std::move(key), depth, has_success(proc), false, false});
      queue.push_back(it->second);
    }
    return it->second;
  };
  add(P, canonical_key(P), 0);

  while (!queue.empty()) {
    std::size_t s = queue.front();
    queue.pop_front();
    if (g.states[s].depth >= max_steps || g.states.size() > max_states) continue;
    Process proc = g.states[s].proc;
    std::size_t depth = g.states[s].depth;
    auto rs = redexes(proc);
    g.states[s].expanded = true;
    g.states[s].terminal = rs.empty();
    for (auto& r : rs) {
      std::size_t t = add(r.result, r.key, depth + 1);
      g.edges.push_back({s, t, std::move(r)});
    }
  }
  // A state at the bound with no reductions is still terminal.
  for (auto& st : g.states) {
    if (st.expanded) continue;
    if (redexes(st.proc).empty()) {
      st.expanded = st.terminal = true;
    }
  }
  g.truncated = false;
  for (const auto& st : g.states) g.truncated = g.truncated || !st.expanded;
  return g;
}

std::optional<std::set<std::size_t>> maximal_trace_lengths(const StateGraph& g) {
  if (g.truncated || g.states.empty()) return std::nullopt;
  std::vector<std::vector<std::size_t>> succ(g.states.size());
  for (const auto& e : g.edges) succ[e.from].push_back(e.to);

  enum Mark : std::uint8_t { White, Grey, Black };
  std::vector<Mark> mark(g.states.size(), White);
  std::vector<std::set<std::size_t>> lengths(g.states.size());
  bool cyclic = false;
  std::function<void(std::size_t)> visit = [&](std::size_t s) {
    mark[s] = Grey;
    if (succ[s].empty()) lengths[s].insert(0);
    for (std::size_t t : succ[s]) {
      if (mark[t] == Grey) {
        cyclic = true;
        continue;
      }
      if (mark[t] == White) visit(t);
      for (std::size_t l : lengths[t]) lengths[s].insert(l + 1);
    }
    mark[s] = Black;
  };
  visit(0);
  if (cyclic) return std::nullopt;
  return lengths[0];
}

RunResult random_run(const Process& P, std::uint64_t seed, std::size_t max_steps) {
  std::mt19937_64 rng(seed);
  RunResult out;
  out.final = P;
  for (std::size_t step = 1; step <= max_steps; ++step) {
    auto rs = redexes(out.final);
    if (rs.empty()) {
      out.deadlocked = true;
      return out;
    }
    std::uniform_int_distribution<std::size_t> pick(0, rs.size() - 1);
    Redex& r = rs[pick(rng)];
    out.events.push_back({step, r.left_pattern, r.right_pattern, r.unifier, r.key, r.result});
    out.final = r.result;
  }
  out.deadlocked = redexes(out.final).empty();
  return out;
}

bool replay(const Process& P, const std::vector<TraceEvent>& events) {
  Process cur = P;
  for (const auto& ev : events) {
    bool found = false;
    for (auto& r : redexes(cur)) {
      if (r.key != ev.key) continue;
      cur = r.result;
      found = true;
      break;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace cpc
