#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "cpc/congruence.hpp"
#include "cpc/corpus.hpp"
#include "cpc/encoding_check.hpp"
#include "cpc/equivalence.hpp"
#include "cpc/explore.hpp"
#include "cpc/linda.hpp"
#include "cpc/lts.hpp"
#include "cpc/parser.hpp"
#include "cpc/printer.hpp"
#include "cpc/reduction.hpp"
#include "cpc/spi.hpp"

namespace cpc::cli {

namespace {

using json = nlohmann::ordered_json;

// Raised for problems the user should fix: bad files, parse errors.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Source {
  std::string arg;
  bool literal = false;
};

std::string read_source(const Source& s, std::istream& in) {
  if (s.literal) return s.arg;
  std::stringstream ss;
  if (s.arg == "-") {
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(s.arg);
  if (!f) throw InputError("cannot read '" + s.arg + "'");
  ss << f.rdbuf();
  return ss.str();
}

enum class Dialect { Cpc, Linda, Spi };

const std::map<std::string, Dialect> kDialects{{"cpc", Dialect::Cpc}, {"linda", Dialect::Linda}, {"spi", Dialect::Spi}};

Dialect infer_dialect(const Source& s) {
  auto ends = [&](const char* ext) {
    std::string e(ext);
    return s.arg.size() >= e.size() && s.arg.compare(s.arg.size() - e.size(), e.size(), e) == 0;
  };
  if (!s.literal && ends(".linda")) return Dialect::Linda;
  if (!s.literal && ends(".spi")) return Dialect::Spi;
  return Dialect::Cpc;
}

template <class F>
auto parsed(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw InputError(what + ":" + e.what());
  }
}

Process load_process(const Source& s, std::istream& in) {
  std::string text = read_source(s, in);
  return parsed(s.literal ? "<expr>" : s.arg, [&] { return parse_process(text); });
}

struct Ctx {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  PrintOptions print;
  bool json = false;
};

// Canonical representative with canonical bound names: stable across runs.
Process display_form(const Process& P) { return canonicalize(P).to_process(); }

json subst_json(const Substitution& s, const PrintOptions& o) {
  json j = json::object();
  for (const auto& [k, v] : s) j[k.text()] = to_string(v, o);
  return j;
}

json names_json(const NameSet& ns) {
  json j = json::array();
  for (Name n : ns) j.push_back(n.text());
  return j;
}

// ---- parse -----------------------------------------------------------------

int cmd_parse(Ctx& c, const Source& src, std::string dialect_name, bool canonical) {
  Dialect d = dialect_name.empty() ? infer_dialect(src) : kDialects.at(dialect_name);
  std::string text = read_source(src, c.in);
  std::string where = src.literal ? "<expr>" : src.arg;
  std::string printed, key;
  std::string dname;
  switch (d) {
    case Dialect::Cpc: {
      Process P = parsed(where, [&] { return parse_process(text); });
      printed = to_string(canonical ? display_form(P) : P, c.print);
      key = canonical_key(P);
      dname = "cpc";
      break;
    }
    case Dialect::Linda: {
      auto P = parsed(where, [&] { return linda::parse_linda(text); });
      printed = linda::to_string(P);
      key = linda::key(P);
      dname = "linda";
      break;
    }
    case Dialect::Spi: {
      auto P = parsed(where, [&] { return spi::parse_spi(text); });
      printed = spi::to_string(P);
      key = spi::key(P);
      dname = "spi";
      break;
    }
  }
  if (c.json) {
    c.out << json{{"dialect", dname}, {"term", printed}, {"key", key}}.dump(2) << "\n";
  } else {
    c.out << printed << "\n";
  }
  return kOk;
}

// ---- unify -----------------------------------------------------------------

int cmd_unify(Ctx& c, const std::string& ptext, const std::string& qtext) {
  Pattern p = parsed("<left>", [&] { return parse_pattern(ptext); });
  Pattern q = parsed("<right>", [&] { return parse_pattern(qtext); });
  for (const Pattern* x : {&p, &q})
    if (!is_well_formed(*x)) throw InputError("ill-formed pattern " + to_string(*x, c.print));
  auto u = unify(p, q);
  if (c.json) {
    json j{{"left", to_string(p, c.print)}, {"right", to_string(q, c.print)}, {"defined", u.has_value()}};
    if (u) {
      j["sigma"] = subst_json(u->left, c.print);
      j["rho"] = subst_json(u->right, c.print);
    }
    c.out << j.dump(2) << "\n";
  } else if (u) {
    c.out << "sigma = " << to_string(u->left, c.print) << "\n";
    c.out << "rho   = " << to_string(u->right, c.print) << "\n";
  } else {
    c.out << "undefined\n";
  }
  return u ? kOk : kNegative;
}

// ---- barbs -----------------------------------------------------------------

int cmd_barbs(Ctx& c, const Source& src) {
  Process P = load_process(src, c.in);
  auto bs = barbs(P);
  if (c.json) {
    json arr = json::array();
    for (const auto& b : bs) arr.push_back(names_json(b.names));
    c.out << json{{"process", to_string(P, c.print)}, {"barbs", arr}}.dump(2) << "\n";
  } else {
    for (const auto& b : bs) c.out << to_string(b.names, c.print) << "\n";
    if (bs.empty()) c.out << "no barbs\n";
  }
  return kOk;
}

// ---- lts -------------------------------------------------------------------

int cmd_lts(Ctx& c, const Source& src, std::size_t depth, bool dot) {
  Process P = load_process(src, c.in);
  struct St {
    Process proc;
    std::size_t depth;
  };
  std::vector<St> states{{P, 0}};
  std::map<std::string, std::size_t> index{{canonical_key(P), 0}};
  struct Tr {
    std::size_t from, to;
    std::string label;
  };
  std::vector<Tr> trs;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].depth >= depth) continue;
    Process cur = states[i].proc;
    std::size_t d = states[i].depth;
    for (const auto& t : transitions(cur)) {
      std::string k = canonical_key(t.target);
      auto [it, fresh] = index.emplace(k, states.size());
      if (fresh) states.push_back({t.target, d + 1});
      trs.push_back({i, it->second, to_string(t.label, c.print)});
    }
  }
  if (dot) {
    c.out << "digraph lts {\n";
    for (std::size_t i = 0; i < states.size(); ++i)
      c.out << "  s" << i << " [label=" << json(to_string(display_form(states[i].proc), c.print)).dump() << "];\n";
    for (const auto& t : trs) c.out << "  s" << t.from << " -> s" << t.to << " [label=" << json(t.label).dump() << "];\n";
    c.out << "}\n";
  } else if (c.json) {
    json js = json::array(), jt = json::array();
    for (std::size_t i = 0; i < states.size(); ++i)
      js.push_back({{"id", i}, {"depth", states[i].depth}, {"process", to_string(display_form(states[i].proc), c.print)}});
    for (const auto& t : trs) jt.push_back({{"from", t.from}, {"label", t.label}, {"to", t.to}});
    c.out << json{{"depth", depth}, {"states", js}, {"transitions", jt}}.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < states.size(); ++i)
      c.out << "s" << i << " = " << to_string(display_form(states[i].proc), c.print) << "\n";
    for (const auto& t : trs) c.out << "s" << t.from << " --" << t.label << "--> s" << t.to << "\n";
  }
  return kOk;
}

// ---- run -------------------------------------------------------------------

json event_json(std::size_t step, const Pattern& l, const Pattern& r, const UnifyResult& u, const Process& state,
                const PrintOptions& o) {
  return {{"step", step},
          {"left", to_string(l, o)},
          {"right", to_string(r, o)},
          {"sigma", subst_json(u.left, o)},
          {"rho", subst_json(u.right, o)},
          {"state", to_string(display_form(state), o)}};
}

void event_text(std::ostream& out, std::size_t step, const Pattern& l, const Pattern& r, const UnifyResult& u,
                const Process& state, const PrintOptions& o) {
  out << "step " << step << ": " << to_string(l, o) << "  ~  " << to_string(r, o) << "\n";
  out << "  sigma = " << to_string(u.left, o) << ", rho = " << to_string(u.right, o) << "\n";
  out << "  => " << to_string(display_form(state), o) << "\n";
}

int run_exhaustive(Ctx& c, const Process& P, std::size_t steps, bool dot) {
  StateGraph g = explore(P, steps);
  auto lengths = maximal_trace_lengths(g);
  std::vector<std::size_t> terminal, cut;
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    if (g.states[i].terminal) terminal.push_back(i);
    if (!g.states[i].expanded) cut.push_back(i);
  }
  if (dot) {
    c.out << "digraph reductions {\n";
    for (std::size_t i = 0; i < g.states.size(); ++i) {
      c.out << "  s" << i << " [label=" << json(to_string(display_form(g.states[i].proc), c.print)).dump();
      if (g.states[i].success) c.out << ", peripheries=2";
      c.out << "];\n";
    }
    for (const auto& e : g.edges) c.out << "  s" << e.from << " -> s" << e.to << ";\n";
    c.out << "}\n";
    return kOk;
  }
  if (c.json) {
    json js = json::array(), je = json::array();
    for (std::size_t i = 0; i < g.states.size(); ++i) {
      const auto& s = g.states[i];
      js.push_back({{"id", i},
                    {"depth", s.depth},
                    {"process", to_string(display_form(s.proc), c.print)},
                    {"success", s.success},
                    {"terminal", s.terminal},
                    {"expanded", s.expanded}});
    }
    for (const auto& e : g.edges)
      je.push_back({{"from", e.from},
                    {"to", e.to},
                    {"left", to_string(e.redex.left_pattern, c.print)},
                    {"right", to_string(e.redex.right_pattern, c.print)},
                    {"sigma", subst_json(e.redex.unifier.left, c.print)},
                    {"rho", subst_json(e.redex.unifier.right, c.print)}});
    json jl = nullptr;
    if (lengths) jl = json(std::vector<std::size_t>(lengths->begin(), lengths->end()));
    c.out << json{{"mode", "exhaustive"},
                  {"steps", steps},
                  {"states", js},
                  {"edges", je},
                  {"deadlocked", terminal},
                  {"step_bound_reached", cut},
                  {"maximal_trace_lengths", jl}}
                 .dump(2)
          << "\n";
    return kOk;
  }
  c.out << g.states.size() << " states, " << g.edges.size() << " reductions\n";
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    const auto& s = g.states[i];
    c.out << "s" << i << " [" << s.depth << "]" << (s.success ? " ok" : "") << (s.terminal ? " deadlock" : "")
          << (s.expanded ? "" : " bound") << ": " << to_string(display_form(s.proc), c.print) << "\n";
  }
  for (const auto& e : g.edges) c.out << "s" << e.from << " -> s" << e.to << "\n";
  if (!cut.empty()) c.out << cut.size() << " state(s) left unexplored at the step bound\n";
  if (lengths) {
    c.out << "maximal trace lengths:";
    for (auto l : *lengths) c.out << " " << l;
    c.out << "\n";
  }
  return kOk;
}

int run_random(Ctx& c, const Process& P, std::size_t steps, std::uint64_t seed) {
  RunResult r = random_run(P, seed, steps);
  std::string stop = r.deadlocked ? "deadlock" : "step-bound";
  if (c.json) {
    json ev = json::array();
    for (const auto& e : r.events) ev.push_back(event_json(e.step, e.left, e.right, e.unifier, e.state, c.print));
    c.out << json{{"mode", "random"},
                  {"seed", seed},
                  {"events", ev},
                  {"final", to_string(display_form(r.final), c.print)},
                  {"success", has_success(r.final)},
                  {"stopped", stop}}
                 .dump(2)
          << "\n";
    return kOk;
  }
  for (const auto& e : r.events) event_text(c.out, e.step, e.left, e.right, e.unifier, e.state, c.print);
  c.out << "stopped: " << stop << (has_success(r.final) ? ", successful" : "") << "\n";
  return kOk;
}

int run_interactive(Ctx& c, const Process& P, std::size_t steps) {
  Process cur = P;
  for (std::size_t step = 1; step <= steps; ++step) {
    c.out << "state: " << to_string(display_form(cur), c.print) << "\n";
    auto rs = redexes(cur);
    if (rs.empty()) {
      c.out << "deadlock\n";
      return kOk;
    }
    for (std::size_t i = 0; i < rs.size(); ++i)
      c.out << "[" << i << "] " << to_string(rs[i].left_pattern, c.print) << "  ~  "
            << to_string(rs[i].right_pattern, c.print) << "\n";
    std::size_t choice = rs.size();
    std::string line;
    while (choice >= rs.size()) {
      c.out << "choose 0-" << rs.size() - 1 << " or q> " << std::flush;
      if (!std::getline(c.in, line) || line == "q") {
        c.out << "\n";
        return kOk;
      }
      try {
        choice = std::stoul(line);
      } catch (const std::exception&) {
        choice = rs.size();
      }
    }
    const Redex& r = rs[choice];
    event_text(c.out, step, r.left_pattern, r.right_pattern, r.unifier, r.result, c.print);
    cur = r.result;
  }
  c.out << "step bound reached\n";
  return kOk;
}

// ---- bisim -----------------------------------------------------------------

json witness_json(const DistinguishingWitness& w, const PrintOptions& o) {
  json tr = json::array();
  for (const auto& s : w.trace) {
    json step{{"side", s.side == Side::Left ? "left" : "right"},
              {"challenge", to_string(s.challenge, o)},
              {"sigma", subst_json(s.sigma, o)}};
    if (s.reply) {
      step["reply"] = to_string(*s.reply, o);
      step["rho"] = subst_json(s.rho, o);
    } else {
      step["reply"] = nullptr;
    }
    tr.push_back(step);
  }
  return {{"pre", subst_json(w.pre, o)}, {"trace", tr}, {"verdict", w.verdict}};
}

struct BisimOpts {
  std::size_t depth = 3;
  std::string pool;
  std::size_t inst_depth = 1;
  bool witness = false;
};

int cmd_bisim(Ctx& c, const Source& a, const Source& b, const BisimOpts& o) {
  Process P = load_process(a, c.in), Q = load_process(b, c.in);
  BisimConfig cfg;
  cfg.depth = o.depth;
  cfg.instantiation_depth = o.inst_depth;
  if (!o.pool.empty()) {
    std::stringstream ss(o.pool);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) cfg.name_pool.push_back(Name::surface(tok));
  }
  BisimResult r = bounded_bisim(P, Q, cfg);
  bool replayed = r.witness && replay_witness(P, Q, *r.witness, cfg);
  if (c.json) {
    json j{{"bisimilar", r.bisimilar},
           {"depth", o.depth},
           {"pairs_explored", r.pairs_explored},
           {"pre_substitutions", r.pre_substitutions},
           {"pre_round_truncated", r.pre_round_truncated}};
    if (r.witness) {
      j["witness"] = witness_json(*r.witness, c.print);
      j["witness_replays"] = replayed;
    }
    c.out << j.dump(2) << "\n";
  } else {
    c.out << (r.bisimilar ? "bisimilar to depth " + std::to_string(o.depth) : std::string("distinguished")) << "\n";
    if (r.pre_round_truncated) c.out << "note: pre-round substitutions truncated\n";
    if (r.witness && o.witness) {
      c.out << to_string(*r.witness, c.print);
      c.out << (replayed ? "witness replays\n" : "witness does not replay\n");
    }
  }
  return r.bisimilar ? kOk : kNegative;
}

// ---- encode / check-encoding ----------------------------------------------

int cmd_encode(Ctx& c, const std::string& from, const Source& src, const std::string& out_path) {
  std::string text = read_source(src, c.in);
  std::string where = src.literal ? "<expr>" : src.arg;
  Process E;
  try {
    if (from == "linda") {
      E = linda::encode_linda(parsed(where, [&] { return linda::parse_linda(text); }));
    } else {
      E = spi::encode_spi_proc(parsed(where, [&] { return spi::parse_spi(text); }));
    }
  } catch (const spi::EncodingError& e) {
    throw InputError(where + ": " + e.what());
  }
  std::string printed = to_string(E, c.print);
  if (out_path.empty()) {
    c.out << printed << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw InputError("cannot write '" + out_path + "'");
    f << printed << "\n";
  }
  return kOk;
}

json clause_json(const ClauseResult& r) {
  return {{"ok", r.ok}, {"detail", r.detail}, {"trace", r.trace}};
}

json report_json(const EncodingReport& r) {
  return {{"language", r.language == SourceLanguage::Linda ? "linda" : "spi"},
          {"steps", r.steps},
          {"source_states", r.source_states},
          {"target_states", r.target_states},
          {"operational_correspondence", clause_json(r.operational)},
          {"reflection", clause_json(r.reflection)},
          {"success_sensitiveness", clause_json(r.success)},
          {"divergence_reflection", clause_json(r.divergence)},
          {"valid", r.valid()}};
}

EncodingReport check_source(const std::string& from, const std::string& text, const std::string& where,
                            std::size_t steps) {
  try {
    if (from == "linda") return check_encoding(parsed(where, [&] { return linda::parse_linda(text); }), steps);
    return check_encoding(parsed(where, [&] { return spi::parse_spi(text); }), steps);
  } catch (const spi::EncodingError& e) {
    throw InputError(where + ": " + e.what());
  }
}

int cmd_check_encoding(Ctx& c, const std::string& from, const Source& src, std::size_t steps,
                       const std::string& report) {
  EncodingReport r = check_source(from, read_source(src, c.in), src.literal ? "<expr>" : src.arg, steps);
  if (report == "json" || c.json) {
    c.out << report_json(r).dump(2) << "\n";
  } else {
    c.out << to_text(r);
  }
  return r.valid() ? kOk : kNegative;
}

// ---- corpus ----------------------------------------------------------------

int cmd_corpus(Ctx& c, const std::string& suite, std::size_t steps) {
  std::vector<std::pair<std::string, corpus::CheckResult>> results;
  if (suite == "trade" || suite == "all")
    for (auto& r : corpus::run_trade_suite()) results.emplace_back("trade", r);
  if (suite == "equivalence" || suite == "all")
    for (auto& r : corpus::run_equivalence_suite()) results.emplace_back("equivalence", r);
  if (suite == "encodings" || suite == "all") {
    for (const auto& p : corpus::linda_programs()) {
      auto rep = check_encoding(linda::parse_linda(p.text), steps);
      results.emplace_back("linda", corpus::CheckResult{p.name, rep.valid(), std::to_string(rep.source_states) + " source states"});
    }
    for (const auto& p : corpus::spi_programs()) {
      auto rep = check_encoding(spi::parse_spi(p.text), steps);
      results.emplace_back("spi", corpus::CheckResult{p.name, rep.valid(), std::to_string(rep.source_states) + " source states"});
    }
  }
  bool all = true;
  json arr = json::array();
  for (const auto& [group, r] : results) {
    all = all && r.passed;
    if (c.json) {
      arr.push_back({{"suite", group}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    } else {
      c.out << (r.passed ? "PASS " : "FAIL ") << group << "/" << r.name << ": " << r.detail << "\n";
    }
  }
  if (c.json) c.out << json{{"results", arr}, {"passed", all}}.dump(2) << "\n";
  return all ? kOk : kNegative;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Concurrent Pattern Calculus workbench", "cpc"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_out = false, unicode = false;
  app.add_flag("--json", json_out, "Machine-readable output");
  app.add_flag("--unicode", unicode, "Print with λ, ⌜·⌝, • and ν");

  auto add_source = [](CLI::App* sub, Source& s, const char* name = "input") {
    sub->add_option(name, s.arg, "File, '-' for stdin, or the term itself with -e")->required();
  };

  Source src, src2;
  bool literal = false;
  std::string dialect, from = "linda", out_path, mode = "exhaustive", report = "text", suite = "all";
  std::string ptext, qtext;
  std::size_t steps = 16, depth = 1, enc_steps = 6;
  std::uint64_t seed = 0;
  bool canonical = false, dot = false;
  BisimOpts bopts;

  auto* parse_cmd = app.add_subcommand("parse", "Parse and print a term");
  add_source(parse_cmd, src);
  parse_cmd->add_flag("-e,--expr", literal, "Treat the input as the term text");
  parse_cmd->add_option("--dialect", dialect, "cpc, linda or spi (default: from the file extension)")
      ->check(CLI::IsMember({"cpc", "linda", "spi"}));
  parse_cmd->add_flag("--canonical", canonical, "Print the canonical form (cpc only)");

  auto* run_cmd = app.add_subcommand("run", "Reduce a process");
  add_source(run_cmd, src);
  run_cmd->add_flag("-e,--expr", literal, "Treat the input as the term text");
  run_cmd->add_option("--mode", mode, "exhaustive, random or interactive")
      ->check(CLI::IsMember({"exhaustive", "random", "interactive"}));
  run_cmd->add_option("--steps", steps, "Step bound")->capture_default_str();
  run_cmd->add_option("--seed", seed, "Seed for random mode")->capture_default_str();
  run_cmd->add_flag("--dot", dot, "Emit the reduction graph as Graphviz (exhaustive mode)");

  auto* unify_cmd = app.add_subcommand("unify", "Unify two patterns");
  unify_cmd->add_option("left", ptext, "Pattern")->required();
  unify_cmd->add_option("right", qtext, "Pattern")->required();

  auto* barbs_cmd = app.add_subcommand("barbs", "List the barbs of a process");
  add_source(barbs_cmd, src);
  barbs_cmd->add_flag("-e,--expr", literal, "Treat the input as the term text");

  auto* lts_cmd = app.add_subcommand("lts", "Enumerate labelled transitions");
  add_source(lts_cmd, src);
  lts_cmd->add_flag("-e,--expr", literal, "Treat the input as the term text");
  lts_cmd->add_option("--depth", depth, "Transition depth")->capture_default_str();
  lts_cmd->add_flag("--dot", dot, "Emit Graphviz");

  auto* bisim_cmd = app.add_subcommand("bisim", "Bounded bisimulation check");
  add_source(bisim_cmd, src, "left");
  add_source(bisim_cmd, src2, "right");
  bisim_cmd->add_flag("-e,--expr", literal, "Treat both inputs as term text");
  bisim_cmd->add_option("--depth", bopts.depth, "Rounds")->capture_default_str();
  bisim_cmd->add_option("--pool", bopts.pool, "Comma-separated name pool for instantiations");
  bisim_cmd->add_option("--inst-depth", bopts.inst_depth, "Compound depth of instantiations")->capture_default_str();
  bisim_cmd->add_flag("--witness", bopts.witness, "Print the distinguishing witness");

  auto* encode_cmd = app.add_subcommand("encode", "Translate a Linda or Spi program into CPC");
  add_source(encode_cmd, src);
  encode_cmd->add_flag("-e,--expr", literal, "Treat the input as the program text");
  encode_cmd->add_option("--from", from, "linda or spi")->required()->check(CLI::IsMember({"linda", "spi"}));
  encode_cmd->add_option("-o,--output", out_path, "Write to a file");

  auto* check_cmd = app.add_subcommand("check-encoding", "Bounded validity check of an encoding");
  add_source(check_cmd, src);
  check_cmd->add_flag("-e,--expr", literal, "Treat the input as the program text");
  check_cmd->add_option("--from", from, "linda or spi")->required()->check(CLI::IsMember({"linda", "spi"}));
  check_cmd->add_option("--steps", enc_steps, "Step bound")->capture_default_str();
  check_cmd->add_option("--report", report, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* corpus_cmd = app.add_subcommand("corpus", "Run the bundled example suites");
  corpus_cmd->add_option("--suite", suite, "trade, equivalence, encodings or all")
      ->check(CLI::IsMember({"trade", "equivalence", "encodings", "all"}));
  corpus_cmd->add_option("--steps", enc_steps, "Step bound for the encodings suite")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Ctx c{in, out, err, {}, json_out};
  c.print.unicode = unicode;
  src.literal = src2.literal = literal;
  try {
    if (*parse_cmd) return cmd_parse(c, src, dialect, canonical);
    if (*unify_cmd) return cmd_unify(c, ptext, qtext);
    if (*barbs_cmd) return cmd_barbs(c, src);
    if (*lts_cmd) return cmd_lts(c, src, depth, dot);
    if (*bisim_cmd) return cmd_bisim(c, src, src2, bopts);
    if (*encode_cmd) return cmd_encode(c, from, src, out_path);
    if (*check_cmd) return cmd_check_encoding(c, from, src, enc_steps, report);
    if (*corpus_cmd) return cmd_corpus(c, suite, enc_steps);
    if (*run_cmd) {
      Process P = load_process(src, in);
      if (mode == "random") return run_random(c, P, steps, seed);
      if (mode == "interactive") return run_interactive(c, P, steps);
      return run_exhaustive(c, P, steps, dot);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace cpc::cli
