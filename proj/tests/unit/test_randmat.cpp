#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "debias/randmat.hpp"
#include "debias/trieig.hpp"
#include "support/oracles.hpp"
#include "support/stats.hpp"

namespace debias {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

TEST(GueTridiag, ShapeAndPositivity) {
  Rng rng({1, 0});
  for (std::size_t k : {1u, 2u, 9u}) {
    const auto t = sample_gue_tridiag(k, rng);
    EXPECT_EQ(t.diag.size(), k);
    EXPECT_EQ(t.offdiag.size(), k - 1);
    for (double b : t.offdiag) EXPECT_GT(b, 0.0);
  }
}

TEST(GueTridiag, DiagonalVarianceOne) {
  Rng rng({2, 0});
  double sum = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const double a = sample_gue_tridiag(1, rng).diag[0];
    sum += a * a;
  }
  EXPECT_NEAR(sum / draws, 1.0, 0.02);
}

TEST(GueTridiag, OffDiagonalSecondMoment) {
  Rng rng({3, 0});
  double sum = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const double b = sample_gue_tridiag(4, rng).offdiag[2];
    sum += b * b;
  }
  EXPECT_NEAR(sum / draws, 3.0, 0.05);
}

TEST(GueTridiag, Deterministic) {
  Rng a({4, 5});
  Rng b({4, 5});
  const auto x = sample_gue_tridiag(12, a);
  const auto y = sample_gue_tridiag(12, b);
  EXPECT_EQ(x.diag, y.diag);
  EXPECT_EQ(x.offdiag, y.offdiag);
}

TEST(GueDense, HermitianAndScaled) {
  Rng rng({5, 0});
  const auto x = sample_gue_dense(6, rng);
  EXPECT_EQ((x - x.adjoint()).norm(), 0.0);
  double sum = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const double v = sample_gue_dense(1, rng)(0, 0).real();
    sum += v * v;
  }
  // Density exp(-x^2/2) on the 1 x 1 case, matching the tridiagonal model.
  EXPECT_NEAR(sum / draws, 1.0, 0.02);
}

TEST(GueDense, TridiagonalModelEquivalence) {
  for (std::size_t k : {2u, 4u, 8u}) {
    Rng rt({6, k});
    Rng rd({7, k});
    std::vector<double> tri, dense;
    const std::size_t draws = 100000 / k;
    for (std::size_t i = 0; i < draws; ++i) {
      for (double l : tridiag_eigenvalues(sample_gue_tridiag(k, rt))) tri.push_back(l);
      for (double l : testing::hermitian_eigenvalues(sample_gue_dense(k, rd))) dense.push_back(l);
    }
    // Eigenvalues of one draw are dependent, so the critical value is a guide.
    const double ks = testing::ks_two_sample(tri, dense);
    EXPECT_LT(ks, testing::ks_critical_value(1e-3, tri.size(), dense.size()) * 1.5) << "k=" << k;
  }
}

TEST(GueTridiag, UniformEigenvalueMarginal) {
  Rng rng({8, 0});
  std::vector<double> xs;
  for (int i = 0; i < 100000; ++i) {
    const auto ev = tridiag_eigenvalues(sample_gue_tridiag(2, rng));
    xs.push_back(ev[rng.index(2)]);
  }
  const auto cdf = [](double t) { return testing::normal_cdf(t) - 0.5 * t * testing::normal_pdf(t); };
  EXPECT_LT(testing::ks_statistic(xs, cdf), 0.01);
}

TEST(JacobiTridiag, EigenvaluesInInterval) {
  Rng rng({9, 0});
  for (int i = 0; i < 10000; ++i) {
    const auto t = sample_jacobi_tridiag(16, rng);
    for (double b : t.offdiag) {
      ASSERT_GT(b, 0.0);
      ASSERT_LT(b, 2.0);
    }
    for (double l : tridiag_eigenvalues(t)) {
      ASSERT_GE(l, -1.0 - 1e-12);
      ASSERT_LE(l, 1.0 + 1e-12);
    }
  }
}

TEST(JacobiTridiag, OneByOneIsUniform) {
  Rng rng({10, 0});
  std::vector<double> xs(100000);
  for (double& x : xs) x = sample_jacobi_tridiag(1, rng).diag[0];
  EXPECT_LT(testing::ks_statistic(xs, [](double t) { return 0.5 * (t + 1.0); }), 0.01);
}

TEST(JacobiTridiag, PairGapMoment) {
  // Under the density (t1 - t2)^2 on [-1,1]^2, E[(t1 - t2)^2] is a ratio of
  // two plain integrals.
  const auto w = [](double a, double b) { return (a - b) * (a - b); };
  const double num = testing::simpson([&](double a) { return testing::simpson([&](double b) { return w(a, b) * w(a, b); }, -1, 1, 200); }, -1, 1, 200);
  const double den = testing::simpson([&](double a) { return testing::simpson([&](double b) { return w(a, b); }, -1, 1, 200); }, -1, 1, 200);
  Rng rng({11, 0});
  double sum = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const auto ev = tridiag_eigenvalues(sample_jacobi_tridiag(2, rng));
    sum += w(ev[0], ev[1]);
  }
  EXPECT_NEAR(sum / draws, num / den, 0.01);
}

TEST(Haar, UnitModulus) {
  Rng rng({12, 0});
  const auto z = sample_haar_unitary_eigs(32, rng);
  ASSERT_EQ(z.size(), 32u);
  for (auto v : z) EXPECT_NEAR(std::abs(v), 1.0, 1e-10);
  for (std::size_t i = 1; i < z.size(); ++i) {
    auto arg = [](std::complex<double> c) { double a = std::arg(c); return a < 0 ? a + kTwoPi : a; };
    EXPECT_LE(arg(z[i - 1]), arg(z[i]));
  }
}

TEST(Haar, MatrixIsUnitary) {
  Rng rng({13, 0});
  const auto u = sample_haar_unitary(10, rng);
  EXPECT_LT((u * u.adjoint() - Eigen::MatrixXcd::Identity(10, 10)).norm(), 1e-12);
}

TEST(Haar, OneByOneIsUniformOnCircle) {
  Rng rng({14, 0});
  std::vector<double> xs(100000);
  for (double& x : xs) {
    double a = std::arg(sample_haar_unitary_eigs(1, rng)[0]);
    x = a < 0 ? a + kTwoPi : a;
  }
  EXPECT_LT(testing::ks_statistic(xs, [](double t) { return t / kTwoPi; }), 0.01);
}

TEST(Haar, TraceMoment) {
  // For Haar U(k), E|tr U|^2 = 1 (k >= 1).
  Rng rng({15, 0});
  double sum = 0.0;
  const int draws = 50000;
  for (int i = 0; i < draws; ++i) {
    std::complex<double> tr = 0.0;
    for (auto z : sample_haar_unitary_eigs(5, rng)) tr += z;
    sum += std::norm(tr);
  }
  EXPECT_NEAR(sum / draws, 1.0, 0.03);
}

}  // namespace
}  // namespace debias
