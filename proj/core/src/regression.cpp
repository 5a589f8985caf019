#include "debias/regression.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "debias/errors.hpp"

namespace debias {
namespace {

constexpr double kCollisionTolerance = 1e-12;

void require_sample_count(int degree, std::size_t n) {
  if (degree < 0) throw InvalidArgument("degree must be nonnegative");
  if (n < static_cast<std::size_t>(degree) + 1) throw InvalidArgument("n must be at least d+1");
}

std::vector<std::pair<std::size_t, std::size_t>> find_collisions(const NodeSet& nodes) {
  std::vector<std::pair<std::size_t, std::size_t>> hits;
  const std::size_t n = nodes.size();
  if (nodes.measure.is_real()) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double scale = std::max(1.0, std::abs(nodes.points[i]));
      if (std::abs(nodes.points[i + 1] - nodes.points[i]) <= kCollisionTolerance * scale) {
        hits.emplace_back(i, i + 1);
      }
    }
  } else {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(nodes.circle_points[i + 1] - nodes.circle_points[i]) <= kCollisionTolerance) {
        hits.emplace_back(i, i + 1);
      }
    }
    if (n > 2 && std::abs(nodes.circle_points[0] - nodes.circle_points[n - 1]) <= kCollisionTolerance) {
      hits.emplace_back(0, n - 1);
    }
  }
  return hits;
}

[[noreturn]] void throw_rank_deficient(const NodeSet& nodes, Eigen::Index rank, std::size_t cols) {
  auto hits = find_collisions(nodes);
  std::string message = "weighted design matrix is rank deficient (rank " + std::to_string(rank) +
                        " < " + std::to_string(cols) + ")";
  if (!hits.empty()) {
    message += "; coincident nodes:";
    for (const auto& [a, b] : hits) {
      message += " (" + std::to_string(a) + "," + std::to_string(b) + ")";
    }
  }
  throw RankDeficientError(message, std::move(hits));
}

template <typename Matrix, typename Vector>
Vector solve_least_squares(const Matrix& a, const Vector& rhs, const NodeSet& nodes) {
  const Eigen::ColPivHouseholderQR<Matrix> qr(a);
  if (qr.rank() < a.cols()) throw_rank_deficient(nodes, qr.rank(), static_cast<std::size_t>(a.cols()));
  Vector x = qr.solve(rhs);
  if (!x.allFinite()) throw NumericError("least-squares solution is not finite");
  return x;
}

NodeSet circle_draw_with_dpp(int degree, std::size_t n, const RngState& state) {
  Rng dpp_rng(derive_stream(state, StreamPurpose::kDppNodes));
  Rng lev_rng(derive_stream(state, StreamPurpose::kLeverageNodes));
  NodeSet nodes = sample_dpp_nodes(Measure::circle(), degree, dpp_rng);
  nodes.merge(sample_leverage_nodes(Measure::circle(), degree,
                                    n - static_cast<std::size_t>(degree) - 1, lev_rng));
  return nodes;
}

PolyFit fit_circle_from(int degree, NodeSet nodes, const CircleOracle& f) {
  std::vector<std::complex<double>> values;
  values.reserve(nodes.size());
  for (const auto& z : nodes.circle_points) values.push_back(f(z));
  return circle_ls_fit(degree, std::move(nodes), values);
}

PolyFit fit_real_from(const OrthoBasis& basis, NodeSet nodes, const RealOracle& f) {
  std::vector<double> values;
  values.reserve(nodes.size());
  for (double t : nodes.points) values.push_back(f(t));
  return weighted_ls_fit(basis, std::move(nodes), values);
}

}  // namespace

double PolyFit::evaluate(const OrthoBasis& basis, double t) const {
  return basis.evaluate_series(std::span<const double>(coeffs.data(), static_cast<std::size_t>(coeffs.size())), t);
}

std::complex<double> PolyFit::evaluate(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (Eigen::Index k = fourier_coeffs.size(); k-- > 0;) acc = acc * z + fourier_coeffs(k);
  return acc;
}

PolyFit weighted_ls_fit(const OrthoBasis& basis, NodeSet nodes, std::span<const double> values) {
  const std::size_t n = nodes.size();
  const std::size_t cols = basis.size();
  require_sample_count(basis.degree(), n);
  if (!nodes.measure.is_real() || nodes.points.size() != n) {
    throw InvalidArgument("weighted_ls_fit needs real nodes");
  }
  if (values.size() != n) throw InvalidArgument("one value per node is required");
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidArgument("function values must be finite");
  }

  Eigen::MatrixXd a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cols));
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
  std::vector<double> row(cols);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = std::sqrt(nodes.weights[i]);
    basis.evaluate(nodes.points[i], row);
    for (std::size_t j = 0; j < cols; ++j) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s * row[j];
    }
    rhs(static_cast<Eigen::Index>(i)) = s * values[i];
  }

  PolyFit fit;
  fit.measure = basis.measure();
  fit.degree = basis.degree();
  fit.coeffs = solve_least_squares(a, rhs, nodes);
  fit.nodes = std::move(nodes);
  return fit;
}

PolyFit circle_ls_fit(int degree, NodeSet nodes, std::span<const std::complex<double>> values) {
  const std::size_t n = nodes.size();
  require_sample_count(degree, n);
  if (nodes.measure.is_real() || nodes.circle_points.size() != n) {
    throw InvalidArgument("circle_ls_fit needs circle nodes");
  }
  if (values.size() != n) throw InvalidArgument("one value per node is required");
  const std::size_t cols = static_cast<std::size_t>(degree) + 1;

  Eigen::MatrixXcd a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cols));
  Eigen::VectorXcd rhs(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag())) {
      throw InvalidArgument("function values must be finite");
    }
    std::complex<double> power = 1.0;
    for (std::size_t j = 0; j < cols; ++j) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = power;
      power *= nodes.circle_points[i];
    }
    rhs(static_cast<Eigen::Index>(i)) = values[i];
  }

  PolyFit fit;
  fit.measure = Measure::circle();
  fit.degree = degree;
  fit.fourier_coeffs = solve_least_squares(a, rhs, nodes);
  fit.nodes = std::move(nodes);
  return fit;
}

PolyFit debiased_fit(const OrthoBasis& basis, std::size_t n, const RealOracle& f,
                     const RngState& state) {
  require_sample_count(basis.degree(), n);
  Rng dpp_rng(derive_stream(state, StreamPurpose::kDppNodes));
  Rng lev_rng(derive_stream(state, StreamPurpose::kLeverageNodes));
  NodeSet nodes = sample_dpp_nodes(basis, dpp_rng);
  nodes.merge(sample_leverage_nodes(basis, n - basis.size(), lev_rng));
  return fit_real_from(basis, std::move(nodes), f);
}

PolyFit leverage_only_fit(const OrthoBasis& basis, std::size_t n, const RealOracle& f,
                          const RngState& state) {
  constexpr int kRetries = 3;
  require_sample_count(basis.degree(), n);
  Rng lev_rng(derive_stream(state, StreamPurpose::kLeverageNodes));
  for (int attempt = 0;; ++attempt) {
    try {
      return fit_real_from(basis, sample_leverage_nodes(basis, n, lev_rng), f);
    } catch (const RankDeficientError&) {
      if (attempt == kRetries) throw;
    }
  }
}

PolyFit fourier_debiased_fit(int degree, std::size_t n, const CircleOracle& f,
                             const RngState& state) {
  require_sample_count(degree, n);
  return fit_circle_from(degree, circle_draw_with_dpp(degree, n, state), f);
}

PolyFit fourier_leverage_fit(int degree, std::size_t n, const CircleOracle& f,
                             const RngState& state) {
  constexpr int kRetries = 3;
  require_sample_count(degree, n);
  Rng lev_rng(derive_stream(state, StreamPurpose::kLeverageNodes));
  for (int attempt = 0;; ++attempt) {
    try {
      return fit_circle_from(degree, sample_leverage_nodes(Measure::circle(), degree, n, lev_rng), f);
    } catch (const RankDeficientError&) {
      if (attempt == kRetries) throw;
    }
  }
}

PolyFit fourier_random_phase_fit(int degree, std::size_t n, const CircleOracle& f,
                                 const RngState& state) {
  require_sample_count(degree, n);
  Rng rng(derive_stream(state, StreamPurpose::kPhase));
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  const double phase = step * rng.uniform();
  std::vector<std::complex<double>> points(n);
  for (std::size_t j = 0; j < n; ++j) points[j] = std::polar(1.0, phase + step * static_cast<double>(j));
  NodeSet nodes;
  nodes.measure = Measure::circle();
  nodes.circle_points = std::move(points);
  nodes.weights.assign(n, 1.0);
  nodes.sources.assign(n, NodeSource::kLeverage);
  return fit_circle_from(degree, std::move(nodes), f);
}

}  // namespace debias
