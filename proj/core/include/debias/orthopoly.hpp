#pragma once

#include <functional>
#include <span>
#include <vector>

#include "debias/measure.hpp"
#include "debias/tridiagonal.hpp"

namespace debias {

/// Orthonormal polynomials P_0..P_d of a real measure, stored through the
/// three-term recurrence
///
///   b_{j+1} P_{j+1}(t) = (t - a_j) P_j(t) - b_j P_{j-1}(t),  P_0 = 1, P_{-1} = 0.
///
/// Gaussian: a_j = 0, b_j = sqrt(j) (normalized probabilists' Hermite).
/// Uniform:  a_j = 0, b_j = j / sqrt((2j-1)(2j+1)) (normalized Legendre).
class OrthoBasis {
 public:
  /// Throws InvalidArgument for the circle measure or a negative degree.
  OrthoBasis(Measure measure, int degree);

  Measure measure() const noexcept { return measure_; }
  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(degree_) + 1; }

  /// a_0 .. a_d.
  std::span<const double> recurrence_a() const noexcept { return a_; }
  /// b_0 .. b_{d+1}, with b_0 = 0 by convention.
  std::span<const double> recurrence_b() const noexcept { return b_; }
  /// Leading coefficient of each P_j; all positive.
  std::span<const double> leading_coefficients() const noexcept { return lead_; }

  /// Writes P_0(t) .. P_d(t) into `out` (size d + 1).
  void evaluate(double t, std::span<double> out) const noexcept;
  std::vector<double> evaluate(double t) const;

  /// tau(t) = sum_j P_j(t)^2. At least 1 everywhere since P_0 = 1.
  double leverage(double t) const noexcept;

  /// sum_j coeffs[j] P_j(t), by Clenshaw's recurrence.
  double evaluate_series(std::span<const double> coeffs, double t) const;

  /// n x n Jacobi matrix of the recurrence; its eigenvalues are the n-point
  /// Gauss nodes of the measure. Requires n <= degree + 2.
  TridiagonalMatrix jacobi_matrix(std::size_t n) const;

 private:
  Measure measure_;
  int degree_;
  std::vector<double> a_;
  std::vector<double> b_;
  std::vector<double> lead_;
};

OrthoBasis build_basis(Measure measure, int degree);

inline std::vector<double> eval_basis(const OrthoBasis& basis, double t) {
  return basis.evaluate(t);
}

inline double leverage(const OrthoBasis& basis, double t) { return basis.leverage(t); }

/// Density of the leverage score distribution, mu(t) tau(t) / (d + 1).
double leverage_pdf(const OrthoBasis& basis, double t);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (weights sum to 2), by Newton
/// iteration on the Legendre recurrence.
QuadratureRule gauss_legendre(std::size_t n);

/// n-point Gauss rule for the probability measure itself (weights sum to 1).
/// Nodes are Jacobi-matrix eigenvalues; weights are Christoffel numbers
/// 1 / sum_{j<n} P_j(x)^2.
QuadratureRule gauss_rule(Measure measure, std::size_t n);

/// Real function with known breakpoints; smooth between them.
struct PiecewiseFunction {
  std::function<double(double)> f;
  std::vector<double> breakpoints;
};

/// Integral of g(t) mu(t) over the measure's support, split at `breakpoints`.
/// Each piece uses composite Gauss-Legendre of the given order, and the panel
/// count doubles until two successive results agree to 1e-10. Throws
/// QuadratureError if that never happens.
double integrate_against(Measure measure, const std::function<double(double)>& g,
                         std::span<const double> breakpoints, std::size_t order);

/// c_k = <f, P_k>_mu for k = 0..d. Quadrature order 4(d+1) per piece.
std::vector<double> best_fit_coeffs(const OrthoBasis& basis, const PiecewiseFunction& f);

/// E_mu[f^2].
double mean_square(Measure measure, const PiecewiseFunction& f, std::size_t order = 64);

}  // namespace debias
