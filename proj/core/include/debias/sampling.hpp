#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "debias/measure.hpp"
#include "debias/orthopoly.hpp"
#include "debias/rng.hpp"

namespace debias {

enum class NodeSource { kDpp, kLeverage };

/// Evaluation points with their least-squares weights 1 / tau(t).
/// Real measures fill `points`; the circle fills `circle_points` and uses
/// weight 1. Nodes are kept sorted (by argument on the circle).
struct NodeSet {
  Measure measure;
  std::vector<double> points;
  std::vector<std::complex<double>> circle_points;
  std::vector<double> weights;
  std::vector<NodeSource> sources;

  std::size_t size() const noexcept { return weights.size(); }
  std::size_t count(NodeSource source) const noexcept;

  /// Appends `other` and re-sorts, keeping each node's weight and source.
  void merge(const NodeSet& other);
};

/// Eigenvalues of the (d+1)-dimensional tridiagonal model for a real measure,
/// ascending. Distributed as the projection DPP of the measure.
std::vector<double> sample_dpp_points(Measure measure, int degree, Rng& rng);

/// d + 1 nodes from the projection DPP: tridiagonal-model eigenvalues for the
/// real measures, Haar-unitary eigenvalues for the circle.
NodeSet sample_dpp_nodes(const OrthoBasis& basis, Rng& rng);
NodeSet sample_dpp_nodes(Measure measure, int degree, Rng& rng);

/// m iid nodes from the leverage score distribution. Each real node is a
/// uniformly chosen eigenvalue of a fresh (d+1)-dimensional model draw; on
/// the circle the distribution is uniform.
NodeSet sample_leverage_nodes(const OrthoBasis& basis, std::size_t m, Rng& rng);
NodeSet sample_leverage_nodes(Measure measure, int degree, std::size_t m, Rng& rng);

/// One leverage-score draw for a real measure.
double sample_leverage_point(Measure measure, int degree, Rng& rng);

/// Unnormalized projection-DPP density prod_{i<j} |t_i - t_j|^2 prod_i mu(t_i)
/// for d + 1 <= 3 nodes. On the circle pass arguments theta_i, and mu is 1/2pi.
/// Throws InvalidArgument when nodes.size() != d + 1 or d + 1 > 3.
double dpp_density_oracle(Measure measure, int degree, std::span<const double> nodes);

}  // namespace debias
