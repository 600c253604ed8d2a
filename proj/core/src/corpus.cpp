#include "cpc/corpus.hpp"

#include <stdexcept>

#include "cpc/congruence.hpp"
#include "cpc/equivalence.hpp"
#include "cpc/explore.hpp"
#include "cpc/parser.hpp"
#include "cpc/printer.hpp"

namespace cpc::corpus {

namespace {

const std::string kBuyer1 = "s . \\m -> m . b . \\x -> #B . x -> ok";
const std::string kSeller1 = "(new n) s . n -> n . \\y . c -> #S . y -> ok";

const std::string kBuyer2 = "s . iB . \\j -> nB . j . \\m -> m . b . \\x -> #B . x -> ok";
const std::string kSeller2 = "s . \\j . iS -> nS . j . \\m -> m . \\y . c -> #S . y -> ok";
const std::string kReg2 = "(new n) (nB . iS . n -> 0 | nS . iB . n -> 0)";

const std::string kBuyer3 = "s . iB . \\j -> #nB . j . \\m -> #m . b . \\x -> #B . x -> ok";
const std::string kSeller3 = "s . \\j . iS -> #nS . j . \\m -> #m . \\y . c -> #S . y -> ok";
const std::string kReg3 = "(new n) (#nB . #iS . n -> 0 | #nS . #iB . n -> 0)";

const std::string kProm = "\\z1 . \\z2 . a -> #P . z1 . z2 -> ok";

std::string par(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "(" : " | (") + p + ")";
  return out;
}

std::string solution3() { return "(new iB iS nB nS) (" + par({kBuyer3, kSeller3, kReg3}) + ")"; }

}  // namespace

const std::vector<Program>& trade() {
  static const std::vector<Program> programs{
      {"solution1", par({kBuyer1, kSeller1})},
      {"solution2", par({kBuyer2, kSeller2, kReg2})},
      {"solution3", solution3()},
      {"promiscuous", kProm},
      {"solution1_prom", par({kBuyer1, kSeller1, kProm})},
      {"solution3_prom", par({solution3(), kProm})},
      {"final", "(new n) (#B . c -> ok | #S . b -> ok)"},
      {"theft", "(new n) (#B . a -> ok | n . \\y . c -> #S . y -> ok | #P . n . b -> ok)"},
  };
  return programs;
}

const std::vector<EquivalencePair>& equivalences() {
  static const std::vector<EquivalencePair> pairs{
      {"subsumed_protected", "#n -> 0 | !(n -> 0)", "!(n -> 0)", true, 3},
      {"subsumed_binding", "\\x . \\y -> 0 | !(\\z -> 0)", "!(\\z -> 0)", true, 3},
      {"closing_counterexample", "\\x -> (x -> 0 | m -> #w -> 0) | !(\\z -> (m -> 0 | m -> #w -> 0))",
       "!(\\z -> (m -> 0 | m -> #w -> 0))", false, 3},
  };
  return pairs;
}

const std::vector<Program>& linda_programs() {
  static const std::vector<Program> programs{
      {"take", "out(b) | in(\\x).ok"},
      {"pipeline", "out(a,b) | in(=a,\\y).out(y) | in(\\z).ok"},
      {"producer", "!out(a) | in(=a).in(=a).ok"},
      {"private_key", "(new k) (out(k,m) | in(=k,\\x).out(x)) | in(=m).ok"},
      {"reorder", "out(a) | out(b) | in(\\x).in(\\y).out(x,y) | in(=b,=a).ok"},
      {"server", "out(req,c) | !in(=req,\\r).out(r,done) | in(=c,=done).ok"},
      {"race", "out(t) | in(\\x).out(x,one) | in(\\y).out(y,two) | in(=t,=two).ok"},
      {"stuck", "out(a,b) | in(=b,\\x).ok | out(c)"},
      {"echo", "!in(\\x).out(x,x) | out(a) | in(=a,=a).ok"},
      {"lock", "(new l) (out(l) | !in(=l).(out(cs) | out(l))) | in(=cs).in(=cs).ok"},
  };
  return programs;
}

const std::vector<Program>& spi_programs() {
  static const std::vector<Program> programs{
      {"send", "a!<b>.ok | a?(x).0"},
      {"match", "[a is a] ok"},
      {"split", "let (x,y) = (a,b) in x!<y> | a?(z).[z is b] ok"},
      {"secret", "(new k) (c!<{m}k> | c?(y).case y of {z}k : [z is m] ok)"},
      {"count", "case 2 of 0 : 0 suc(x) : case x of 0 : 0 suc(y) : case y of 0 : ok suc(z) : 0"},
      {"sealed_pair", "(new k) (c!<{(a,n)}k> | c?(u).case u of {p}k : let (x,y) = p in x!<y>.ok) | a?(v).0"},
      {"replicated", "!c!<a> | c?(x).c?(y).[x is y] ok"},
      {"decrement", "c!<(a,1)> | c?(p).let (x,n) = p in case n of 0 : 0 suc(m) : x!<m>.ok | a?(w).0"},
      {"wrong_key", "(new s) (a!<{b}s>.ok | a?(x).case x of {y}t : 0)"},
      {"key_server", "(new k) (!srv?(r).r!<{r}k> | srv!<c> | c?(m).case m of {z}k : [z is c] ok)"},
  };
  return programs;
}

const Program& find(const std::vector<Program>& set, const std::string& name) {
  for (const auto& p : set)
    if (p.name == name) return p;
  throw std::out_of_range("no corpus program named '" + name + "'");
}

std::vector<CheckResult> run_trade_suite() {
  std::vector<CheckResult> out;
  const Process final_state = parse_process(find(trade(), "final").text);

  auto traces = [&](const std::string& name, std::size_t expected_length) {
    StateGraph g = explore(parse_process(find(trade(), name).text), 16);
    auto lengths = maximal_trace_lengths(g);
    bool ok = lengths && *lengths == std::set<std::size_t>{expected_length};
    std::size_t finals = 0;
    for (const auto& s : g.states) {
      if (!s.terminal) continue;
      ++finals;
      ok = ok && struct_eq(s.proc, final_state);
    }
    ok = ok && finals == 1;
    out.push_back({name, ok,
                   std::to_string(g.states.size()) + " states, " + std::to_string(finals) +
                       " final; maximal traces of length " + std::to_string(expected_length)});
  };
  traces("solution1", 2);
  traces("solution2", 4);

  const Process theft = parse_process(find(trade(), "theft").text);
  StateGraph g1 = explore(parse_process(find(trade(), "solution1_prom").text), 6);
  bool stolen = false;
  for (const auto& s : g1.states) stolen = stolen || struct_eq(s.proc, theft);
  out.push_back({"solution1_theft", stolen, stolen ? "theft state reachable" : "theft state not reachable"});

  StateGraph g3 = explore(parse_process(find(trade(), "solution3_prom").text), 6);
  const Name b = Name::surface("b"), p = Name::surface("P");
  bool leaked = false;
  for (const auto& s : g3.states)
    for (const auto& t : flatten(s.proc).threads) {
      if (!t.is(Process::Kind::Case)) continue;
      NameSet fn = free_names(t.pattern());
      if (fn.count(p) && fn.count(b)) leaked = true;
    }
  out.push_back({"solution3_no_theft", !leaked,
                 std::to_string(g3.states.size()) + " states within 6 steps" +
                     (leaked ? ", b reaches the promiscuous process" : "")});
  return out;
}

std::vector<CheckResult> run_equivalence_suite() {
  std::vector<CheckResult> out;
  for (const auto& e : equivalences()) {
    Process P = parse_process(e.left), Q = parse_process(e.right);
    BisimConfig cfg;
    cfg.depth = e.depth;
    BisimResult r = bounded_bisim(P, Q, cfg);
    bool ok = r.bisimilar == e.bisimilar;
    std::string detail = r.bisimilar ? "bisimilar to depth " + std::to_string(e.depth) : "distinguished";
    if (!r.bisimilar && r.witness) {
      bool replayed = replay_witness(P, Q, *r.witness, cfg);
      ok = ok && replayed;
      detail += replayed ? ", witness replays" : ", witness does not replay";
    }
    out.push_back({e.name, ok, detail});
  }
  return out;
}

}  // namespace cpc::corpus
