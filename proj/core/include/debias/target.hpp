#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "debias/measure.hpp"
#include "debias/orthopoly.hpp"

namespace debias {

/// 1 on [lower, upper], 0 elsewhere.
struct Indicator {
  double lower = 0.0;
  double upper = 0.0;
};

/// On the unit circle: 1 where arg(z), taken in [0, 2pi), lies in [lower, upper].
struct Arc {
  double lower = 0.0;
  double upper = 0.0;
};

/// sum_k coeffs[k] t^k (or z^k on the circle). Monomial coefficients.
struct Polynomial {
  std::vector<double> coeffs;
};

/// Built-in target functions, addressable from the command line as
/// `indicator:a,b`, `arc:a,b` or `poly:c0,c1,...`.
class Target {
 public:
  using Spec = std::variant<Indicator, Arc, Polynomial>;

  Target() = default;
  explicit Target(Spec spec);

  static Target parse(std::string_view text);

  const Spec& spec() const noexcept { return spec_; }
  std::string to_string() const;

  /// Throws InvalidArgument if the target cannot be used with `measure`
  /// (arcs need the circle, indicators a real measure, bounds in range).
  void check_compatible(Measure measure) const;

  double operator()(double t) const;
  std::complex<double> operator()(std::complex<double> z) const;

  /// Points where the function is not smooth.
  std::vector<double> breakpoints() const;
  PiecewiseFunction piecewise() const;

 private:
  Spec spec_ = Indicator{-0.5, 0.5};
};

/// Oracle quantities of a target under a measure: the best degree-d
/// coefficients and E|f|^2. On the circle the coefficients are the Fourier
/// coefficients c_0..c_d under the normalized inner product (1/2pi) int d(theta).
struct TargetReference {
  Measure measure;
  int degree = 0;
  std::vector<double> coeffs;
  std::vector<std::complex<double>> fourier_coeffs;
  double mean_square = 0.0;

  /// E|p* - f|^2 = E|f|^2 - ||c||^2.
  double optimal_residual() const;
};

TargetReference make_reference(Measure measure, int degree, const Target& target);

/// Fourier coefficients c_0..c_d of a circle target, in closed form.
std::vector<std::complex<double>> fourier_coeffs(const Target& target, int degree);

}  // namespace debias
