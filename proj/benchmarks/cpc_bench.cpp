#include <benchmark/benchmark.h>

#include "cpc/congruence.hpp"
#include "cpc/corpus.hpp"
#include "cpc/encoding_check.hpp"
#include "cpc/equivalence.hpp"
#include "cpc/explore.hpp"
#include "cpc/linda.hpp"
#include "cpc/lts.hpp"
#include "cpc/parser.hpp"
#include "cpc/reduction.hpp"
#include "cpc/spi.hpp"

using namespace cpc;

namespace {

const Process& trade(const char* name) {
  static std::map<std::string, Process> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, parse_process(corpus::find(corpus::trade(), name).text)).first;
  return it->second;
}

// Deeply nested patterns on both sides, unifiable.
Pattern nested(int depth, bool left) {
  Pattern p = left ? Pattern::binding(Name::surface("x0")) : Pattern::variable(Name::surface("a"));
  for (int i = 1; i < depth; ++i) {
    Pattern atom = (i % 2 == 0) == left ? Pattern::binding(Name::surface("x" + std::to_string(i)))
                                         : Pattern::variable(Name::surface("n" + std::to_string(i)));
    p = Pattern::compound(p, atom);
  }
  return p;
}

void BM_Unify(benchmark::State& state) {
  int depth = static_cast<int>(state.range(0));
  Pattern p = nested(depth, true), q = nested(depth, false);
  for (auto _ : state) benchmark::DoNotOptimize(unify(p, q));
}
BENCHMARK(BM_Unify)->RangeMultiplier(4)->Range(4, 256);

void BM_CanonicalKey(benchmark::State& state) {
  const Process& P = trade("solution3_prom");
  for (auto _ : state) benchmark::DoNotOptimize(canonical_key(P));
}
BENCHMARK(BM_CanonicalKey);

void BM_Reductions(benchmark::State& state) {
  const Process& P = trade("solution2");
  for (auto _ : state) benchmark::DoNotOptimize(reductions(P));
}
BENCHMARK(BM_Reductions);

void BM_Transitions(benchmark::State& state) {
  const Process& P = trade("solution1_prom");
  for (auto _ : state) benchmark::DoNotOptimize(transitions(P));
}
BENCHMARK(BM_Transitions);

void BM_ExploreTrade(benchmark::State& state) {
  const Process& P = trade("solution3_prom");
  for (auto _ : state) benchmark::DoNotOptimize(explore(P, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_ExploreTrade)->DenseRange(2, 6, 2);

void BM_BisimCounterexample(benchmark::State& state) {
  Process Q = parse_process("!(\\x -> (m -> 0 | m -> #w -> 0))");
  Process P = Process::par(parse_process("\\x -> (x -> 0 | m -> #w -> 0)"), Q);
  BisimConfig cfg;
  cfg.depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bounded_bisim(P, Q, cfg));
}
BENCHMARK(BM_BisimCounterexample)->DenseRange(1, 3);

void BM_CheckEncodingCorpus(benchmark::State& state) {
  std::vector<linda::LindaProcess> lp;
  std::vector<spi::SpiProcess> sp;
  for (const auto& p : corpus::linda_programs()) lp.push_back(linda::parse_linda(p.text));
  for (const auto& p : corpus::spi_programs()) sp.push_back(spi::parse_spi(p.text));
  for (auto _ : state) {
    for (const auto& p : lp) benchmark::DoNotOptimize(check_encoding(p, 6));
    for (const auto& p : sp) benchmark::DoNotOptimize(check_encoding(p, 6));
  }
}
BENCHMARK(BM_CheckEncodingCorpus)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
