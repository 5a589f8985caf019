#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "debias/errors.hpp"
#include "debias/experiments.hpp"
#include "debias/regression.hpp"
#include "debias/target.hpp"
#include "support/stats.hpp"

namespace debias {
namespace {

NodeSet manual_nodes(const OrthoBasis& basis, std::vector<double> points) {
  NodeSet set;
  set.measure = basis.measure();
  set.points = std::move(points);
  for (double t : set.points) {
    set.weights.push_back(1.0 / basis.leverage(t));
    set.sources.push_back(NodeSource::kLeverage);
  }
  return set;
}

TEST(WeightedLs, RecoversInModelPolynomial) {
  for (Measure m : {Measure::gaussian(), Measure::uniform()}) {
    const int d = 6;
    const auto basis = build_basis(m, d);
    const std::vector<double> x{0.5, -1.0, 0.25, 0.0, 0.75, -0.3, 0.1};
    Rng rng({1, 0});
    auto nodes = sample_dpp_nodes(basis, rng);
    nodes.merge(sample_leverage_nodes(basis, 9, rng));
    std::vector<double> values;
    for (double t : nodes.points) values.push_back(basis.evaluate_series(x, t));
    const auto fit = weighted_ls_fit(basis, nodes, values);
    for (int j = 0; j <= d; ++j) EXPECT_NEAR(fit.coeffs[j], x[j], 1e-10) << m.name();
    EXPECT_EQ(fit.nodes_used(), 16u);
  }
}

TEST(WeightedLs, ConstantFunctionGivesFirstUnitVector) {
  const auto basis = build_basis(Measure::gaussian(), 5);
  const auto fit = debiased_fit(basis, 12, [](double) { return 1.0; }, {2, 0});
  EXPECT_NEAR(fit.coeffs[0], 1.0, 1e-12);
  for (int j = 1; j <= 5; ++j) EXPECT_NEAR(fit.coeffs[j], 0.0, 1e-12);
}

TEST(WeightedLs, SquareSystemInterpolates) {
  for (Measure m : {Measure::gaussian(), Measure::uniform()}) {
    const auto basis = build_basis(m, 12);
    const Target f(Indicator{-0.5, 0.5});
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
      const auto fit = debiased_fit(basis, 13, [&](double t) { return f(t); }, trial_stream(3, trial));
      ASSERT_EQ(fit.nodes.size(), 13u);
      for (double t : fit.nodes.points) EXPECT_NEAR(fit.evaluate(basis, t), f(t), 1e-8);
    }
  }
}

TEST(WeightedLs, WeightScaleInvarianceAtSquareSize) {
  const auto basis = build_basis(Measure::uniform(), 7);
  auto nodes = manual_nodes(basis, {-0.95, -0.7, -0.3, -0.05, 0.2, 0.45, 0.8, 0.99});
  std::vector<double> values;
  for (double t : nodes.points) values.push_back(std::exp(t));
  const auto base = weighted_ls_fit(basis, nodes, values);
  for (double scale : {1e-6, 0.3, 17.0, 1e6}) {
    auto scaled = nodes;
    for (double& w : scaled.weights) w *= scale;
    const auto fit = weighted_ls_fit(basis, scaled, values);
    for (int j = 0; j <= 7; ++j) EXPECT_NEAR(fit.coeffs[j], base.coeffs[j], 1e-9);
  }
}

TEST(WeightedLs, RejectsTooFewNodes) {
  const auto basis = build_basis(Measure::uniform(), 4);
  const auto nodes = manual_nodes(basis, {-0.5, 0.0, 0.5});
  const std::vector<double> values{1.0, 2.0, 3.0};
  try {
    weighted_ls_fit(basis, nodes, values);
    FAIL() << "expected InvalidArgument";
  } catch (const InvalidArgument& e) {
    EXPECT_STREQ(e.what(), "n must be at least d+1");
  }
  EXPECT_THROW(debiased_fit(basis, 4, [](double) { return 0.0; }, {1, 1}), InvalidArgument);
  EXPECT_THROW(leverage_only_fit(basis, 2, [](double) { return 0.0; }, {1, 1}), InvalidArgument);
}

TEST(WeightedLs, RejectsNonFiniteValues) {
  const auto basis = build_basis(Measure::uniform(), 1);
  const auto nodes = manual_nodes(basis, {-0.5, 0.5});
  const std::vector<double> values{1.0, NAN};
  EXPECT_THROW(weighted_ls_fit(basis, nodes, values), InvalidArgument);
}

TEST(WeightedLs, ReportsCollidingNodes) {
  const auto basis = build_basis(Measure::uniform(), 3);
  const auto nodes = manual_nodes(basis, {-0.5, 0.1, 0.1, 0.1, 0.7});
  const std::vector<double> values{1.0, 2.0, 2.0, 2.0, 0.0};
  try {
    weighted_ls_fit(basis, nodes, values);
    FAIL() << "expected RankDeficientError";
  } catch (const RankDeficientError& e) {
    ASSERT_EQ(e.collisions().size(), 2u);
    EXPECT_EQ(e.collisions()[0], (std::pair<std::size_t, std::size_t>{1, 2}));
    EXPECT_EQ(e.collisions()[1], (std::pair<std::size_t, std::size_t>{2, 3}));
    EXPECT_NE(std::string(e.what()).find("(1,2)"), std::string::npos);
  }
}

TEST(DebiasedFit, ExactlyNOracleCalls) {
  const auto basis = build_basis(Measure::gaussian(), 9);
  for (std::size_t n : {10u, 11u, 25u}) {
    std::size_t calls = 0;
    const auto fit = debiased_fit(basis, n, [&](double t) { ++calls; return std::sin(t); }, {4, n});
    EXPECT_EQ(calls, n);
    EXPECT_EQ(fit.nodes.count(NodeSource::kDpp), 10u);
    EXPECT_EQ(fit.nodes.count(NodeSource::kLeverage), n - 10);
  }
}

TEST(DebiasedFit, Deterministic) {
  const auto basis = build_basis(Measure::uniform(), 8);
  const auto f = [](double t) { return std::abs(t); };
  const auto a = debiased_fit(basis, 20, f, {5, 3});
  const auto b = debiased_fit(basis, 20, f, {5, 3});
  EXPECT_EQ(a.coeffs, b.coeffs);
  EXPECT_EQ(a.nodes.points, b.nodes.points);
}

TEST(DebiasedFit, InModelTargetHasZeroVariance) {
  const auto basis = build_basis(Measure::uniform(), 5);
  const Target poly(Polynomial{{0.2, -1.0, 0.0, 3.0, 0.5, -0.25}});
  const auto ref = make_reference(Measure::uniform(), 5, poly);
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    const auto fit = debiased_fit(basis, 8, [&](double t) { return poly(t); }, trial_stream(6, trial));
    for (int j = 0; j <= 5; ++j) EXPECT_NEAR(fit.coeffs[j], ref.coeffs[j], 1e-10);
  }
}

TEST(LeverageOnlyFit, ZeroAndInModel) {
  const auto basis = build_basis(Measure::gaussian(), 4);
  const auto zero = leverage_only_fit(basis, 9, [](double) { return 0.0; }, {7, 0});
  for (int j = 0; j <= 4; ++j) EXPECT_EQ(zero.coeffs[j], 0.0);
  const Target poly(Polynomial{{1.0, 0.0, -2.0, 0.0, 0.5}});
  const auto ref = make_reference(Measure::gaussian(), 4, poly);
  const auto fit = leverage_only_fit(basis, 9, [&](double t) { return poly(t); }, {7, 1});
  for (int j = 0; j <= 4; ++j) EXPECT_NEAR(fit.coeffs[j], ref.coeffs[j], 1e-10);
  EXPECT_EQ(fit.nodes.count(NodeSource::kLeverage), 9u);
}

TEST(FourierFit, InModelMonomial) {
  const int d = 6;
  for (int j = 0; j <= d; ++j) {
    const auto f = [j](std::complex<double> z) { return std::pow(z, j); };
    for (const auto& fit : {fourier_debiased_fit(d, 10, f, {8, 0}), fourier_leverage_fit(d, 10, f, {8, 1}),
                            fourier_random_phase_fit(d, 10, f, {8, 2})}) {
      for (int k = 0; k <= d; ++k) {
        EXPECT_NEAR(std::abs(fit.fourier_coeffs[k] - (k == j ? 1.0 : 0.0)), 0.0, 1e-10);
      }
    }
  }
}

TEST(FourierFit, SquareSystemInterpolates) {
  const Target arc(Arc{3 * std::numbers::pi / 4, 5 * std::numbers::pi / 4});
  const auto fit = fourier_debiased_fit(9, 10, [&](std::complex<double> z) { return arc(z); }, {9, 0});
  for (auto z : fit.nodes.circle_points) EXPECT_NEAR(std::abs(fit.evaluate(z) - arc(z)), 0.0, 1e-8);
}

TEST(FourierFit, HigherHarmonicAveragesToZero) {
  const int d = 2;
  const int trials = 100000;
  std::vector<std::vector<double>> re(d + 1), im(d + 1);
  for (int t = 0; t < trials; ++t) {
    const auto fit = fourier_debiased_fit(d, 6, [](std::complex<double> z) { return z * z * z; },
                                          trial_stream(10, t));
    for (int k = 0; k <= d; ++k) {
      re[k].push_back(fit.fourier_coeffs[k].real());
      im[k].push_back(fit.fourier_coeffs[k].imag());
    }
  }
  for (int k = 0; k <= d; ++k) {
    for (const auto* xs : {&re[k], &im[k]}) {
      const auto m = testing::moments(*xs);
      EXPECT_LE(std::abs(m.mean), 4.0 * m.stddev / std::sqrt(trials) + 1e-12) << k;
    }
  }
}

TEST(Unbiasedness, SmallDegreeIndicators) {
  const int d = 5;
  const std::size_t trials = 20000;
  for (Measure m : {Measure::gaussian(), Measure::uniform()}) {
    const Target f = m == Measure::uniform() ? Target(Indicator{-0.5, 0.5}) : Target(Indicator{-1.0, 1.0});
    const auto basis = build_basis(m, d);
    const auto ref = make_reference(m, d, f);
    for (std::size_t n : {static_cast<std::size_t>(d + 1), static_cast<std::size_t>(2 * d)}) {
      std::vector<std::vector<double>> coeffs(d + 1);
      for (std::size_t t = 0; t < trials; ++t) {
        const auto fit = debiased_fit(basis, n, [&](double x) { return f(x); }, trial_stream(11 + n, t));
        for (int j = 0; j <= d; ++j) coeffs[j].push_back(fit.coeffs[j]);
      }
      for (int j = 0; j <= d; ++j) {
        const auto mo = testing::moments(coeffs[j]);
        EXPECT_LE(std::abs(mo.mean - ref.coeffs[j]), 4.0 * mo.stddev / std::sqrt(trials))
            << m.name() << " n=" << n << " j=" << j;
      }
    }
  }
}

TEST(ErrorAccounting, ParsevalMatchesQuadrature) {
  for (Measure m : {Measure::gaussian(), Measure::uniform()}) {
    const int d = 10;
    const Target f = m == Measure::uniform() ? Target(Indicator{-0.5, 0.5}) : Target(Indicator{-1.0, 1.0});
    const auto basis = build_basis(m, d);
    const auto ref = make_reference(m, d, f);
    const auto fit = debiased_fit(basis, 20, [&](double x) { return f(x); }, {12, 0});
    double xc = 0.0, xx = 0.0;
    for (int j = 0; j <= d; ++j) {
      xc += fit.coeffs[j] * ref.coeffs[j];
      xx += fit.coeffs[j] * fit.coeffs[j];
    }
    const double parseval = ref.mean_square - 2.0 * xc + xx;
    const auto bp = f.breakpoints();
    const double direct = integrate_against(
        m, [&](double t) { const double r = fit.evaluate(basis, t) - f(t); return r * r; }, bp, 64);
    EXPECT_NEAR(parseval, direct, 1e-8) << m.name();
    EXPECT_NEAR(excess_error(fit, ref), parseval - ref.optimal_residual(), 1e-10);
  }
}

TEST(ErrorAccounting, FitErrorNeverBeatsOptimum) {
  const int d = 8;
  const auto basis = build_basis(Measure::uniform(), d);
  const Target f(Indicator{-0.5, 0.5});
  const auto ref = make_reference(Measure::uniform(), d, f);
  double small_n = 0.0, large_n = 0.0;
  const int trials = 300;
  for (int t = 0; t < trials; ++t) {
    const double e1 = relative_error(debiased_fit(basis, 12, [&](double x) { return f(x); }, trial_stream(13, t)), ref);
    const double e2 = relative_error(debiased_fit(basis, 200, [&](double x) { return f(x); }, trial_stream(14, t)), ref);
    EXPECT_GE(e1, 0.0);
    EXPECT_GE(e2, 0.0);
    small_n += e1;
    large_n += e2;
  }
  EXPECT_LT(large_n, small_n);
  EXPECT_LT(large_n / trials, 0.2);
}

}  // namespace
}  // namespace debias
