#include <benchmark/benchmark.h>

#include "kemeny/constant.hpp"
#include "kemeny/graph.hpp"
#include "kemeny/sparsify.hpp"
#include "kemeny/spectral.hpp"

namespace {

kemeny::WeightedGraph connected_er(std::size_t n, double p) {
  for (std::uint64_t seed = 1;; ++seed) {
    auto g = kemeny::erdos_renyi(n, p, seed);
    if (kemeny::is_connected(g)) return g;
  }
}

void BM_Spectrum(benchmark::State& state) {
  const auto g = connected_er(static_cast<std::size_t>(state.range(0)), 0.3);
  const auto ls = kemeny::assemble(g);
  for (auto _ : state) benchmark::DoNotOptimize(kemeny::spectrum(ls));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Spectrum)->RangeMultiplier(2)->Range(32, 256)->Complexity(benchmark::oNCubed);

void BM_GroupInverse(benchmark::State& state) {
  const auto g = connected_er(static_cast<std::size_t>(state.range(0)), 0.3);
  const auto ls = kemeny::assemble(g);
  for (auto _ : state) benchmark::DoNotOptimize(kemeny::group_inverse(ls));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GroupInverse)->RangeMultiplier(2)->Range(32, 256)->Complexity(benchmark::oNCubed);

void BM_MfptOracle(benchmark::State& state) {
  const auto g = connected_er(static_cast<std::size_t>(state.range(0)), 0.3);
  const auto ls = kemeny::assemble(g);
  const auto dp = kemeny::degree_profile(g);
  for (auto _ : state) benchmark::DoNotOptimize(kemeny::kemeny_mfpt_oracle(ls, dp));
}
BENCHMARK(BM_MfptOracle)->RangeMultiplier(2)->Range(32, 256);

void BM_Sparsify(benchmark::State& state) {
  const auto g = connected_er(static_cast<std::size_t>(state.range(0)), 0.5);
  const auto gi = kemeny::group_inverse(kemeny::assemble(g));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(kemeny::sparsify(g, gi, 1.0, ++seed));
}
BENCHMARK(BM_Sparsify)->Arg(64)->Arg(128)->Arg(250);

void BM_FullRun(benchmark::State& state) {
  const auto ref = kemeny::analyze(connected_er(static_cast<std::size_t>(state.range(0)), 0.5));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kemeny::run_sparsification(ref, 0.5, ++seed, kemeny::kHarnessMaxAttempts));
  }
}
BENCHMARK(BM_FullRun)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
