#include <complex>
#include <numbers>

#include <benchmark/benchmark.h>

#include "debias/experiments.hpp"
#include "debias/regression.hpp"

namespace {

void BM_DebiasedFit(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const debias::OrthoBasis basis(debias::Measure::uniform(), d);
  const auto n = static_cast<std::size_t>(2 * d + 5);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(debias::debiased_fit(
        basis, n, [](double t) { return t > -0.5 && t < 0.5 ? 1.0 : 0.0; }, debias::trial_stream(6, trial++)));
  }
}
BENCHMARK(BM_DebiasedFit)->Arg(10)->Arg(15)->Arg(30)->Arg(60);

void BM_LeverageOnlyFit(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const debias::OrthoBasis basis(debias::Measure::uniform(), d);
  const auto n = static_cast<std::size_t>(2 * d + 5);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(debias::leverage_only_fit(
        basis, n, [](double t) { return t > -0.5 && t < 0.5 ? 1.0 : 0.0; }, debias::trial_stream(7, trial++)));
  }
}
BENCHMARK(BM_LeverageOnlyFit)->Arg(10)->Arg(15)->Arg(30)->Arg(60);

void BM_FourierFit(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto n = static_cast<std::size_t>(d + 10);
  const debias::Target arc(debias::Arc{0.75 * std::numbers::pi, 1.25 * std::numbers::pi});
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(debias::fourier_debiased_fit(
        d, n, [&](std::complex<double> z) { return arc(z); }, debias::trial_stream(8, trial++)));
  }
}
BENCHMARK(BM_FourierFit)->Arg(10)->Arg(15)->Arg(30);

void BM_BestFitCoeffs(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const debias::Target f(debias::Indicator{-1.0, 1.0});
  for (auto _ : state) benchmark::DoNotOptimize(debias::make_reference(debias::Measure::gaussian(), d, f));
}
BENCHMARK(BM_BestFitCoeffs)->Arg(10)->Arg(30);

}  // namespace
