#include "debias/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "debias/errors.hpp"
#include "debias/trieig.hpp"

namespace debias {

double Measure::pdf(double t) const noexcept {
  switch (kind_) {
    case MeasureKind::kGaussian:
      return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
    case MeasureKind::kUniform:
      return (t >= -1.0 && t <= 1.0) ? 0.5 : 0.0;
    case MeasureKind::kCircle:
      return 0.5 / std::numbers::pi;
  }
  return 0.0;
}

std::pair<double, double> Measure::quadrature_support() const {
  switch (kind_) {
    case MeasureKind::kGaussian:
      return {-40.0, 40.0};
    case MeasureKind::kUniform:
      return {-1.0, 1.0};
    case MeasureKind::kCircle:
      return {0.0, 2.0 * std::numbers::pi};
  }
  return {0.0, 0.0};
}

std::string_view Measure::name() const noexcept {
  switch (kind_) {
    case MeasureKind::kGaussian:
      return "gaussian";
    case MeasureKind::kUniform:
      return "uniform";
    case MeasureKind::kCircle:
      return "circle";
  }
  return "unknown";
}

Measure parse_measure(std::string_view name) {
  if (name == "gaussian") return Measure::gaussian();
  if (name == "uniform") return Measure::uniform();
  if (name == "circle") return Measure::circle();
  throw InvalidArgument("unknown measure '" + std::string(name) +
                        "' (expected gaussian, uniform or circle)");
}

OrthoBasis::OrthoBasis(Measure measure, int degree) : measure_(measure), degree_(degree) {
  if (degree < 0) throw InvalidArgument("degree must be nonnegative");
  if (!measure.is_real()) {
    throw InvalidArgument("the circle measure uses the monomial basis z^k, not an OrthoBasis");
  }
  const auto d = static_cast<std::size_t>(degree);
  a_.assign(d + 1, 0.0);
  b_.assign(d + 2, 0.0);
  for (std::size_t j = 1; j <= d + 1; ++j) {
    const double jd = static_cast<double>(j);
    b_[j] = measure.kind() == MeasureKind::kGaussian
                ? std::sqrt(jd)
                : jd / std::sqrt((2.0 * jd - 1.0) * (2.0 * jd + 1.0));
  }
  lead_.assign(d + 1, 1.0);
  for (std::size_t j = 1; j <= d; ++j) lead_[j] = lead_[j - 1] / b_[j];
}

void OrthoBasis::evaluate(double t, std::span<double> out) const noexcept {
  const auto d = static_cast<std::size_t>(degree_);
  double prev = 0.0;
  double cur = 1.0;
  out[0] = 1.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double next = ((t - a_[j]) * cur - b_[j] * prev) / b_[j + 1];
    prev = cur;
    cur = next;
    out[j + 1] = cur;
  }
}

std::vector<double> OrthoBasis::evaluate(double t) const {
  std::vector<double> out(size());
  evaluate(t, out);
  return out;
}

double OrthoBasis::leverage(double t) const noexcept {
  const auto d = static_cast<std::size_t>(degree_);
  double prev = 0.0;
  double cur = 1.0;
  double sum = 1.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double next = ((t - a_[j]) * cur - b_[j] * prev) / b_[j + 1];
    prev = cur;
    cur = next;
    sum += cur * cur;
  }
  return sum;
}

double OrthoBasis::evaluate_series(std::span<const double> coeffs, double t) const {
  if (coeffs.size() != size()) throw InvalidArgument("evaluate_series: coefficient count != d+1");
  // Clenshaw: y_j = c_j + (t - a_j)/b_{j+1} y_{j+1} - b_{j+1}/b_{j+2} y_{j+2}.
  double y1 = 0.0;
  double y2 = 0.0;
  for (std::size_t j = coeffs.size(); j-- > 0;) {
    double y = coeffs[j];
    if (j + 1 < coeffs.size()) y += (t - a_[j]) / b_[j + 1] * y1;
    if (j + 2 < coeffs.size()) y -= b_[j + 1] / b_[j + 2] * y2;
    y2 = y1;
    y1 = y;
  }
  return y1;
}

TridiagonalMatrix OrthoBasis::jacobi_matrix(std::size_t n) const {
  if (n == 0 || n > size() + 1) throw InvalidArgument("jacobi_matrix: size out of range");
  TridiagonalMatrix t;
  t.diag.assign(n, 0.0);
  for (std::size_t j = 0; j < n && j < a_.size(); ++j) t.diag[j] = a_[j];
  t.offdiag.assign(b_.begin() + 1, b_.begin() + static_cast<std::ptrdiff_t>(n));
  return t;
}

OrthoBasis build_basis(Measure measure, int degree) { return OrthoBasis(measure, degree); }

double leverage_pdf(const OrthoBasis& basis, double t) {
  return basis.measure().pdf(t) * basis.leverage(t) / static_cast<double>(basis.size());
}

QuadratureRule gauss_legendre(std::size_t n) {
  if (n == 0) throw InvalidArgument("gauss_legendre: need at least one node");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double jd = static_cast<double>(j);
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * jd - 1.0) * x * p1 - (jd - 1.0) * p2) / jd;
      }
      dp = nd * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

QuadratureRule gauss_rule(Measure measure, std::size_t n) {
  if (n == 0) throw InvalidArgument("gauss_rule: need at least one node");
  const OrthoBasis basis(measure, static_cast<int>(n) - 1);
  QuadratureRule rule;
  rule.nodes = tridiag_eigenvalues(basis.jacobi_matrix(n));
  rule.weights.reserve(n);
  for (double x : rule.nodes) rule.weights.push_back(1.0 / basis.leverage(x));
  return rule;
}

namespace {

using VectorIntegrand = std::function<void(double, std::span<double>)>;

// Composite Gauss-Legendre over [lo, hi] with `panels` equal panels,
// accumulating integrand(t) * mu(t) into `acc`.
void composite_pass(const QuadratureRule& rule, Measure measure, const VectorIntegrand& g,
                    double lo, double hi, std::size_t panels, std::span<double> acc,
                    std::span<double> scratch) {
  std::fill(acc.begin(), acc.end(), 0.0);
  const double width = (hi - lo) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = lo + width * static_cast<double>(p);
    const double mid = a + 0.5 * width;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double t = mid + 0.5 * width * rule.nodes[q];
      const double w = 0.5 * width * rule.weights[q] * measure.pdf(t);
      if (w == 0.0) continue;
      g(t, scratch);
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += w * scratch[k];
    }
  }
}

std::vector<double> integrate_vector(Measure measure, const VectorIntegrand& g, std::size_t dim,
                                     std::span<const double> breakpoints, std::size_t order) {
  constexpr double kTolerance = 1e-10;
  constexpr std::size_t kMaxPanels = std::size_t{1} << 14;

  const auto [lo, hi] = measure.quadrature_support();
  std::vector<double> cuts{lo};
  for (double b : breakpoints) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const QuadratureRule rule = gauss_legendre(order);
  std::vector<double> total(dim, 0.0);
  std::vector<double> coarse(dim), fine(dim), scratch(dim);
  for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
    const double a = cuts[piece];
    const double b = cuts[piece + 1];
    std::size_t panels = 1;
    composite_pass(rule, measure, g, a, b, panels, coarse, scratch);
    bool converged = false;
    while (panels < kMaxPanels) {
      panels *= 2;
      composite_pass(rule, measure, g, a, b, panels, fine, scratch);
      double diff = 0.0;
      double scale = 1.0;
      for (std::size_t k = 0; k < dim; ++k) {
        diff = std::max(diff, std::abs(fine[k] - coarse[k]));
        scale = std::max(scale, std::abs(fine[k]));
      }
      std::swap(coarse, fine);
      if (diff <= kTolerance * scale) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw QuadratureError("quadrature did not stabilize to 1e-10 on [" + std::to_string(a) +
                            ", " + std::to_string(b) + "]");
    }
    for (std::size_t k = 0; k < dim; ++k) total[k] += coarse[k];
  }
  return total;
}

}  // namespace

double integrate_against(Measure measure, const std::function<double(double)>& g,
                         std::span<const double> breakpoints, std::size_t order) {
  if (!measure.is_real()) throw InvalidArgument("integrate_against: real measures only");
  const auto result = integrate_vector(
      measure, [&g](double t, std::span<double> out) { out[0] = g(t); }, 1, breakpoints, order);
  return result[0];
}

std::vector<double> best_fit_coeffs(const OrthoBasis& basis, const PiecewiseFunction& f) {
  if (!f.f) throw InvalidArgument("best_fit_coeffs: empty function");
  const std::size_t order = 4 * basis.size();
  return integrate_vector(
      basis.measure(),
      [&](double t, std::span<double> out) {
        basis.evaluate(t, out);
        const double ft = f.f(t);
        for (double& v : out) v *= ft;
      },
      basis.size(), f.breakpoints, order);
}

double mean_square(Measure measure, const PiecewiseFunction& f, std::size_t order) {
  if (!f.f) throw InvalidArgument("mean_square: empty function");
  return integrate_against(
      measure,
      [&f](double t) {
        const double v = f.f(t);
        return v * v;
      },
      f.breakpoints, order);
}

}  // namespace debias
