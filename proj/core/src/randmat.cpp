#include "debias/randmat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "debias/errors.hpp"

namespace debias {
namespace {

void require_dimension(std::size_t k) {
  if (k == 0) throw InvalidArgument("matrix dimension must be at least 1");
}

double wrapped_arg(std::complex<double> z) {
  double a = std::arg(z);
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  return a;
}

}  // namespace

TridiagonalMatrix sample_gue_tridiag(std::size_t k, Rng& rng) {
  require_dimension(k);
  TridiagonalMatrix t;
  t.diag.resize(k);
  t.offdiag.resize(k - 1);
  for (auto& a : t.diag) a = rng.normal();
  for (std::size_t i = 1; i < k; ++i) {
    t.offdiag[i - 1] = rng.chi(2.0 * static_cast<double>(i)) / std::numbers::sqrt2;
  }
  return t;
}

TridiagonalMatrix sample_jacobi_tridiag(std::size_t k, Rng& rng) {
  require_dimension(k);
  const double kk = static_cast<double>(k);
  // p[i] holds p_i for i = 1..2k-1; p_{-1} = p_0 = 0.
  std::vector<double> p(2 * k, 0.0);
  for (std::size_t i = 1; i < 2 * k; ++i) {
    const double id = static_cast<double>(i);
    if (i % 2 == 0) {
      p[i] = rng.beta((2.0 * kk - id) / 2.0, (2.0 * kk - id + 2.0) / 2.0);
    } else {
      const double shape = (2.0 * kk - id + 1.0) / 2.0;
      p[i] = rng.beta(shape, shape);
    }
  }
  const auto at = [&p](std::ptrdiff_t i) { return i <= 0 ? 0.0 : p[static_cast<std::size_t>(i)]; };

  TridiagonalMatrix t;
  t.diag.resize(k);
  t.offdiag.resize(k - 1);
  for (std::size_t row = 1; row <= k; ++row) {
    const auto i = static_cast<std::ptrdiff_t>(row);
    const double alpha = at(2 * i - 2) * (1.0 - at(2 * i - 3)) + at(2 * i - 1) * (1.0 - at(2 * i - 2));
    t.diag[row - 1] = 2.0 * alpha - 1.0;
    if (row < k) {
      const double beta2 =
          at(2 * i - 1) * (1.0 - at(2 * i - 2)) * at(2 * i) * (1.0 - at(2 * i - 1));
      t.offdiag[row - 1] = 2.0 * std::sqrt(std::max(beta2, 0.0));
    }
  }
  return t;
}

Eigen::MatrixXcd sample_haar_unitary(std::size_t k, Rng& rng) {
  require_dimension(k);
  const auto n = static_cast<Eigen::Index>(k);
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = std::complex<double>(re, im) / std::numbers::sqrt2;
    }
  }
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const std::complex<double> rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  return q;
}

std::vector<std::complex<double>> sample_haar_unitary_eigs(std::size_t k, Rng& rng) {
  const Eigen::MatrixXcd u = sample_haar_unitary(k, rng);
  std::vector<std::complex<double>> eigs(k);
  if (k == 1) {
    eigs[0] = u(0, 0);
  } else {
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(u, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
      throw EigenConvergenceError("unitary eigenvalue iteration did not converge");
    }
    for (std::size_t i = 0; i < k; ++i) eigs[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
  }
  std::sort(eigs.begin(), eigs.end(),
            [](auto a, auto b) { return wrapped_arg(a) < wrapped_arg(b); });
  return eigs;
}

Eigen::MatrixXcd sample_gue_dense(std::size_t k, Rng& rng) {
  require_dimension(k);
  const auto n = static_cast<Eigen::Index>(k);
  Eigen::MatrixXcd x(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x(i, i) = rng.normal();
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double re = rng.normal() / std::numbers::sqrt2;
      const double im = rng.normal() / std::numbers::sqrt2;
      x(i, j) = std::complex<double>(re, im);
      x(j, i) = std::conj(x(i, j));
    }
  }
  return x;
}

}  // namespace debias
