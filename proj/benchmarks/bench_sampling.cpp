#include <benchmark/benchmark.h>

#include "debias/randmat.hpp"
#include "debias/sampling.hpp"

namespace {

void BM_DppNodes(benchmark::State& state, debias::Measure measure) {
  const int d = static_cast<int>(state.range(0));
  const debias::OrthoBasis basis(measure, d);
  debias::Rng rng({3, 0});
  for (auto _ : state) benchmark::DoNotOptimize(debias::sample_dpp_nodes(basis, rng));
}
BENCHMARK_CAPTURE(BM_DppNodes, gaussian, debias::Measure::gaussian())->RangeMultiplier(2)->Range(4, 256);
BENCHMARK_CAPTURE(BM_DppNodes, uniform, debias::Measure::uniform())->RangeMultiplier(2)->Range(4, 256);

void BM_HaarEigs(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  debias::Rng rng({4, 0});
  for (auto _ : state) benchmark::DoNotOptimize(debias::sample_haar_unitary_eigs(k, rng));
}
BENCHMARK(BM_HaarEigs)->RangeMultiplier(2)->Range(4, 128);

void BM_LeverageNode(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  debias::Rng rng({5, 0});
  for (auto _ : state) benchmark::DoNotOptimize(debias::sample_leverage_point(debias::Measure::uniform(), d, rng));
}
BENCHMARK(BM_LeverageNode)->RangeMultiplier(2)->Range(4, 128);

}  // namespace
