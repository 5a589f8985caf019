#include <benchmark/benchmark.h>

#include "debias/randmat.hpp"
#include "debias/trieig.hpp"

namespace {

void BM_TridiagQl(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  debias::Rng rng({1, 0});
  const auto t = debias::sample_gue_tridiag(k, rng);
  for (auto _ : state) benchmark::DoNotOptimize(debias::tridiag_eigenvalues(t));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TridiagQl)->RangeMultiplier(2)->Range(8, 1024)->Complexity();

void BM_TridiagBisection(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  debias::Rng rng({2, 0});
  const auto t = debias::sample_gue_tridiag(k, rng);
  for (auto _ : state) benchmark::DoNotOptimize(debias::tridiag_eigenvalues_bisection(t));
}
BENCHMARK(BM_TridiagBisection)->RangeMultiplier(4)->Range(8, 512);

}  // namespace
