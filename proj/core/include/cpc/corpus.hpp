#pragma once

#include <string>
#include <vector>

namespace cpc::corpus {

// Bundled example programs. The same texts ship as files under corpus/.
struct Program {
  std::string name;
  std::string text;
};

// Trade processes in the CPC surface syntax. Outcomes are `ok`-tagged
// leaves: B(x) = #B . x -> ok, S(y) = #S . y -> ok, P(u,v) = #P . u . v -> ok.
//   solution1, solution2, solution3         buyer | seller (| registrar)
//   solution1_prom, solution3_prom          the same with the promiscuous process
//   final                                   (new n)(B(c) | S(b))
//   theft                                   the stolen state after Solution 1
const std::vector<Program>& trade();

struct EquivalencePair {
  std::string name;
  std::string left, right;
  bool bisimilar;
  std::size_t depth;
};
const std::vector<EquivalencePair>& equivalences();

const std::vector<Program>& linda_programs();
const std::vector<Program>& spi_programs();

// Throws std::out_of_range for unknown names.
const Program& find(const std::vector<Program>& set, const std::string& name);

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

// Runs the trade and equivalence regressions.
std::vector<CheckResult> run_trade_suite();
std::vector<CheckResult> run_equivalence_suite();

}  // namespace cpc::corpus
