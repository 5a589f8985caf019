#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "debias/measure.hpp"
#include "debias/orthopoly.hpp"
#include "debias/rng.hpp"
#include "debias/sampling.hpp"

namespace debias {

using RealOracle = std::function<double(double)>;
using CircleOracle = std::function<std::complex<double>(std::complex<double>)>;

/// A fitted degree-d approximation. Real measures carry coefficients in the
/// orthonormal basis; the circle carries coefficients over z^0..z^d.
struct PolyFit {
  Measure measure;
  int degree = 0;
  Eigen::VectorXd coeffs;
  Eigen::VectorXcd fourier_coeffs;
  NodeSet nodes;

  std::size_t nodes_used() const noexcept { return nodes.size(); }
  double evaluate(const OrthoBasis& basis, double t) const;
  std::complex<double> evaluate(std::complex<double> z) const;
};

/// argmin_x ||S (V x - b)||_2 with V_ij = P_j(t_i) and S = diag(sqrt(w_i)),
/// via column-pivoted Householder QR of S V.
/// Throws InvalidArgument if fewer than d + 1 nodes or a non-finite value is
/// given, and RankDeficientError if S V loses column rank.
PolyFit weighted_ls_fit(const OrthoBasis& basis, NodeSet nodes, std::span<const double> values);

/// Unweighted least squares over {1, z, ..., z^d} on the circle.
PolyFit circle_ls_fit(int degree, NodeSet nodes, std::span<const std::complex<double>> values);

/// Debiased fit for a real measure: d + 1 projection-DPP nodes plus n - d - 1
/// leverage nodes, then weighted least squares. Exactly n oracle calls.
///
/// The DPP and leverage draws come from sub-streams of `state`, so a
/// leverage-only fit from the same state reuses the same leverage draws.
PolyFit debiased_fit(const OrthoBasis& basis, std::size_t n, const RealOracle& f,
                     const RngState& state);

/// Baseline: n iid leverage nodes and weighted least squares. A rank
/// deficient draw is replaced by fresh nodes up to three times.
PolyFit leverage_only_fit(const OrthoBasis& basis, std::size_t n, const RealOracle& f,
                          const RngState& state);

/// Debiased Fourier fit: d + 1 Haar-unitary eigenvalues plus n - d - 1 iid
/// uniform points on the circle, unweighted least squares.
PolyFit fourier_debiased_fit(int degree, std::size_t n, const CircleOracle& f,
                             const RngState& state);

/// Baseline on the circle: n iid uniform points (the circle's leverage
/// distribution is uniform).
PolyFit fourier_leverage_fit(int degree, std::size_t n, const CircleOracle& f,
                             const RngState& state);

/// n equispaced points on the circle with a uniformly random common phase.
/// Unbiased, but no error guarantee is claimed for it.
PolyFit fourier_random_phase_fit(int degree, std::size_t n, const CircleOracle& f,
                                 const RngState& state);

}  // namespace debias
