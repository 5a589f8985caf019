#pragma once

#include <string>
#include <string_view>
#include <utility>

namespace debias {

enum class MeasureKind {
  kGaussian,  ///< standard normal on the real line
  kUniform,   ///< uniform on [-1, 1]
  kCircle,    ///< uniform on the complex unit circle
};

/// Base distribution against which approximation error is measured.
class Measure {
 public:
  constexpr Measure() = default;
  constexpr explicit Measure(MeasureKind kind) : kind_(kind) {}

  static constexpr Measure gaussian() { return Measure(MeasureKind::kGaussian); }
  static constexpr Measure uniform() { return Measure(MeasureKind::kUniform); }
  static constexpr Measure circle() { return Measure(MeasureKind::kCircle); }

  constexpr MeasureKind kind() const noexcept { return kind_; }
  constexpr bool is_real() const noexcept { return kind_ != MeasureKind::kCircle; }

  /// Density on the real line, or with respect to arc length theta on the circle
  /// (the constant 1 / 2pi).
  double pdf(double t) const noexcept;

  /// Interval used for real-line quadrature. The Gaussian is truncated to
  /// [-40, 40]: wide enough that polynomial-weighted integrands up to degree
  /// 80 lose nothing measurable beyond it.
  std::pair<double, double> quadrature_support() const;

  /// "gaussian", "uniform" or "circle".
  std::string_view name() const noexcept;

  friend constexpr bool operator==(Measure a, Measure b) { return a.kind_ == b.kind_; }

 private:
  MeasureKind kind_ = MeasureKind::kUniform;
};

/// Inverse of Measure::name(). Throws InvalidArgument for unknown names.
Measure parse_measure(std::string_view name);

}  // namespace debias
