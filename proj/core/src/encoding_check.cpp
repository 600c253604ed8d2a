#include "cpc/encoding_check.hpp"

#include <deque>
#include <functional>
#include <map>
#include <set>

#include "cpc/congruence.hpp"
#include "cpc/printer.hpp"
#include "cpc/reduction.hpp"

namespace cpc {

namespace {

struct LindaLang {
  using Proc = linda::LindaProcess;
  static constexpr bool prune = false;
  static std::vector<Proc> reduce(const Proc& P) { return linda::linda_reduce(P); }
  static Process encode(const Proc& P) { return linda::encode_linda(P); }
  static std::string key(const Proc& P) { return linda::key(P); }
  static std::string show(const Proc& P) { return linda::to_string(P); }
  static bool success(const Proc& P) { return linda::has_success(P); }
};

struct SpiLang {
  using Proc = spi::SpiProcess;
  static constexpr bool prune = true;
  static std::vector<Proc> reduce(const Proc& P) { return spi::spi_reduce(P); }
  static Process encode(const Proc& P) { return spi::encode_spi_proc(P); }
  static std::string key(const Proc& P) { return spi::key(P); }
  static std::string show(const Proc& P) { return spi::to_string(P); }
  static bool success(const Proc& P) { return spi::has_success(P); }
};

template <class Lang>
std::string norm(const Process& Q) {
  return canonical_key(Lang::prune ? prune_dead(Q) : Q);
}

// Can some run take `r` more steps? Failures are memoised per (key, r).
template <class P>
class Runner {
 public:
  using Step = std::function<std::vector<std::pair<P, std::string>>(const P&)>;
  explicit Runner(Step step) : step_(std::move(step)) {}

  bool can_run(const P& state, const std::string& k, std::size_t r) {
    if (r == 0) return true;
    if (failed_.count({k, r})) return false;
    ++visited_;
    for (const auto& [next, nk] : step_(state))
      if (can_run(next, nk, r - 1)) return true;
    failed_.emplace(k, r);
    return false;
  }
  std::size_t visited() const { return visited_; }

 private:
  Step step_;
  std::set<std::pair<std::string, std::size_t>> failed_;
  std::size_t visited_ = 0;
};

template <class Lang>
EncodingReport check(const typename Lang::Proc& P0, std::size_t steps, SourceLanguage lang) {
  using Proc = typename Lang::Proc;
  EncodingReport rep;
  rep.language = lang;
  rep.steps = steps;

  struct Node {
    Proc proc;
    std::size_t depth;
    std::string parent;
  };
  std::map<std::string, Node> seen;
  std::deque<std::string> queue;
  const std::string k0 = Lang::key(P0);
  seen.emplace(k0, Node{P0, 0, ""});
  queue.push_back(k0);

  auto trace_to = [&](const std::string& k) {
    std::vector<std::string> out;
    for (std::string cur = k; !cur.empty(); cur = seen.at(cur).parent) out.insert(out.begin(), Lang::show(seen.at(cur).proc));
    return out;
  };
  auto fail = [&](ClauseResult& c, const std::string& at, std::string detail) {
    if (!c.ok) return;
    c.ok = false;
    c.detail = std::move(detail);
    c.trace = trace_to(at);
  };

  bool source_success = false;
  while (!queue.empty()) {
    std::string k = queue.front();
    queue.pop_front();
    const Node node = seen.at(k);
    const Proc& S = node.proc;
    Process E = Lang::encode(S);

    bool s_ok = Lang::success(S);
    source_success = source_success || s_ok;
    if (s_ok != has_success(E))
      fail(rep.success, k, s_ok ? "source state succeeds but its encoding does not" : "encoding succeeds but the source state does not");

    if (node.depth >= steps) continue;

    std::map<std::string, Proc> src;
    for (const auto& S2 : Lang::reduce(S)) src.emplace(norm<Lang>(Lang::encode(S2)), S2);
    std::set<std::string> tgt;
    std::map<std::string, Process> tgt_proc;
    for (const auto& Q : reductions(E)) {
      std::string nk = norm<Lang>(Q);
      tgt.insert(nk);
      tgt_proc.emplace(nk, Q);
    }
    for (const auto& [nk, S2] : src)
      if (!tgt.count(nk)) fail(rep.operational, k, "source step to " + Lang::show(S2) + " has no encoded counterpart");
    for (const auto& [nk, Q] : tgt_proc)
      if (!src.count(nk)) fail(rep.reflection, k, "encoded step to " + to_string(Q) + " matches no source step");

    for (const auto& S2 : Lang::reduce(S)) {
      std::string k2 = Lang::key(S2);
      if (seen.emplace(k2, Node{S2, node.depth + 1, k}).second) queue.push_back(k2);
    }
  }
  rep.source_states = seen.size();

  bool target_success = succeeds(Lang::encode(P0), steps);
  if (source_success != target_success)
    fail(rep.success, k0,
         target_success ? "encoding reaches success within the bound, source does not"
                        : "source reaches success within the bound, encoding does not");

  Runner<Proc> src_run([](const Proc& S) {
    std::vector<std::pair<Proc, std::string>> out;
    for (auto& S2 : Lang::reduce(S)) out.emplace_back(S2, Lang::key(S2));
    return out;
  });
  Runner<Process> tgt_run([](const Process& Q) {
    std::vector<std::pair<Process, std::string>> out;
    for (auto& r : redexes(Q)) out.emplace_back(r.result, r.key);
    return out;
  });
  Process E0 = Lang::encode(P0);
  bool tgt_long = tgt_run.can_run(E0, canonical_key(E0), steps);
  bool src_long = src_run.can_run(P0, k0, steps);
  rep.target_states = tgt_run.visited();
  if (tgt_long && !src_long)
    fail(rep.divergence, k0, "encoding runs " + std::to_string(steps) + " steps, source cannot");
  return rep;
}

void clause_text(std::string& out, const char* name, const ClauseResult& c) {
  out += std::string(name) + ": " + (c.ok ? "ok" : "VIOLATED") + "\n";
  if (c.ok) return;
  out += "  " + c.detail + "\n";
  for (std::size_t i = 0; i < c.trace.size(); ++i) out += "  [" + std::to_string(i) + "] " + c.trace[i] + "\n";
}

}  // namespace

EncodingReport check_encoding(const linda::LindaProcess& P, std::size_t steps) {
  return check<LindaLang>(P, steps, SourceLanguage::Linda);
}

EncodingReport check_encoding(const spi::SpiProcess& P, std::size_t steps) {
  return check<SpiLang>(P, steps, SourceLanguage::Spi);
}

std::string to_text(const EncodingReport& r) {
  std::string out = std::string(r.language == SourceLanguage::Linda ? "linda" : "spi") + ", " +
                    std::to_string(r.steps) + " steps, " + std::to_string(r.source_states) + " source states\n";
  clause_text(out, "(a) operational correspondence", r.operational);
  clause_text(out, "(b) reflection", r.reflection);
  clause_text(out, "(c) success sensitiveness", r.success);
  clause_text(out, "(d) divergence reflection", r.divergence);
  out += r.valid() ? "valid\n" : "invalid\n";
  return out;
}

}  // namespace cpc
