#pragma once

#include <vector>

#include <Eigen/Dense>

#include "debias/tridiagonal.hpp"

namespace debias::testing {

/// Cyclic Jacobi rotations on a dense symmetric matrix; ascending eigenvalues.
std::vector<double> jacobi_rotation_eigenvalues(Eigen::MatrixXd a);

Eigen::MatrixXd to_dense(const TridiagonalMatrix& t);

/// Eigenvalues of a dense Hermitian matrix via Eigen's self-adjoint solver.
std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& x);

/// Classical Legendre L_n(t) by Bonnet's recurrence.
double legendre(int n, double t);
/// Probabilists' Hermite He_n(t).
double hermite_e(int n, double t);

/// Composite Simpson rule with `panels` (even) subintervals.
template <typename F>
double simpson(F&& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + h * i);
  return sum * h / 3.0;
}

}  // namespace debias::testing
