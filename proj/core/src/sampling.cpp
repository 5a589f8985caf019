#include "debias/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "debias/errors.hpp"
#include "debias/randmat.hpp"
#include "debias/trieig.hpp"

namespace debias {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrapped_arg(std::complex<double> z) {
  double a = std::arg(z);
  if (a < 0.0) a += kTwoPi;
  return a;
}

TridiagonalMatrix sample_model(Measure measure, std::size_t k, Rng& rng) {
  switch (measure.kind()) {
    case MeasureKind::kGaussian:
      return sample_gue_tridiag(k, rng);
    case MeasureKind::kUniform:
      return sample_jacobi_tridiag(k, rng);
    case MeasureKind::kCircle:
      break;
  }
  throw InvalidArgument("the circle has no tridiagonal model");
}

void require_degree(int degree) {
  if (degree < 0) throw InvalidArgument("degree must be nonnegative");
}

NodeSet real_nodes(const OrthoBasis& basis, std::vector<double> points, NodeSource source) {
  NodeSet set;
  set.measure = basis.measure();
  set.weights.reserve(points.size());
  for (double t : points) set.weights.push_back(1.0 / basis.leverage(t));
  set.sources.assign(points.size(), source);
  set.points = std::move(points);
  return set;
}

NodeSet circle_nodes(std::vector<std::complex<double>> points, NodeSource source) {
  NodeSet set;
  set.measure = Measure::circle();
  set.weights.assign(points.size(), 1.0);
  set.sources.assign(points.size(), source);
  set.circle_points = std::move(points);
  return set;
}

}  // namespace

std::size_t NodeSet::count(NodeSource source) const noexcept {
  return static_cast<std::size_t>(std::count(sources.begin(), sources.end(), source));
}

void NodeSet::merge(const NodeSet& other) {
  if (!(other.measure == measure)) throw InvalidArgument("cannot merge node sets of different measures");
  points.insert(points.end(), other.points.begin(), other.points.end());
  circle_points.insert(circle_points.end(), other.circle_points.begin(), other.circle_points.end());
  weights.insert(weights.end(), other.weights.begin(), other.weights.end());
  sources.insert(sources.end(), other.sources.begin(), other.sources.end());

  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (measure.is_real()) {
    std::stable_sort(order.begin(), order.end(),
                     [this](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  } else {
    std::stable_sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
      return wrapped_arg(circle_points[a]) < wrapped_arg(circle_points[b]);
    });
  }
  const auto permute = [&order](auto& v) {
    if (v.empty()) return;
    auto copy = v;
    for (std::size_t i = 0; i < order.size(); ++i) v[i] = copy[order[i]];
  };
  permute(points);
  permute(circle_points);
  permute(weights);
  permute(sources);
}

std::vector<double> sample_dpp_points(Measure measure, int degree, Rng& rng) {
  require_degree(degree);
  return tridiag_eigenvalues(sample_model(measure, static_cast<std::size_t>(degree) + 1, rng));
}

NodeSet sample_dpp_nodes(const OrthoBasis& basis, Rng& rng) {
  return real_nodes(basis, sample_dpp_points(basis.measure(), basis.degree(), rng), NodeSource::kDpp);
}

NodeSet sample_dpp_nodes(Measure measure, int degree, Rng& rng) {
  require_degree(degree);
  if (!measure.is_real()) {
    return circle_nodes(sample_haar_unitary_eigs(static_cast<std::size_t>(degree) + 1, rng),
                        NodeSource::kDpp);
  }
  return sample_dpp_nodes(OrthoBasis(measure, degree), rng);
}

double sample_leverage_point(Measure measure, int degree, Rng& rng) {
  require_degree(degree);
  const std::size_t k = static_cast<std::size_t>(degree) + 1;
  TridiagonalMatrix t = sample_model(measure, k, rng);
  std::vector<double> work(k, 0.0);
  std::copy(t.offdiag.begin(), t.offdiag.end(), work.begin());
  // A uniform pick does not need the spectrum sorted.
  if (!tridiag_ql_inplace(t.diag, work)) t.diag = tridiag_eigenvalues_bisection(t);
  return t.diag[rng.index(k)];
}

NodeSet sample_leverage_nodes(const OrthoBasis& basis, std::size_t m, Rng& rng) {
  std::vector<double> points(m);
  for (auto& t : points) t = sample_leverage_point(basis.measure(), basis.degree(), rng);
  std::sort(points.begin(), points.end());
  return real_nodes(basis, std::move(points), NodeSource::kLeverage);
}

NodeSet sample_leverage_nodes(Measure measure, int degree, std::size_t m, Rng& rng) {
  require_degree(degree);
  if (!measure.is_real()) {
    std::vector<double> args(m);
    for (auto& a : args) a = kTwoPi * rng.uniform();
    std::sort(args.begin(), args.end());
    std::vector<std::complex<double>> points;
    points.reserve(m);
    for (double a : args) points.push_back(std::polar(1.0, a));
    return circle_nodes(std::move(points), NodeSource::kLeverage);
  }
  return sample_leverage_nodes(OrthoBasis(measure, degree), m, rng);
}

double dpp_density_oracle(Measure measure, int degree, std::span<const double> nodes) {
  require_degree(degree);
  const std::size_t k = static_cast<std::size_t>(degree) + 1;
  if (k > 3) throw InvalidArgument("dpp_density_oracle supports at most 3 nodes");
  if (nodes.size() != k) throw InvalidArgument("dpp_density_oracle needs exactly d + 1 nodes");
  double density = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (measure.is_real()) {
        const double gap = nodes[i] - nodes[j];
        density *= gap * gap;
      } else {
        density *= std::norm(std::polar(1.0, nodes[i]) - std::polar(1.0, nodes[j]));
      }
    }
    density *= measure.pdf(nodes[i]);
  }
  return density;
}

}  // namespace debias
