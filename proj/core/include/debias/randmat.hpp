#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "debias/rng.hpp"
#include "debias/tridiagonal.hpp"

namespace debias {

/// Dumitriu-Edelman tridiagonal model for the GUE of N(0,1):
/// alpha_i ~ N(0,1), beta_i ~ chi_{2i} / sqrt(2).
TridiagonalMatrix sample_gue_tridiag(std::size_t k, Rng& rng);

/// Killip-Nenciu model mapped from [0,1] to [-1,1] by Y -> 2Y - I. The map
/// scales the off-diagonal by 2 and does not shift it.
TridiagonalMatrix sample_jacobi_tridiag(std::size_t k, Rng& rng);

/// Eigenvalues of a Haar-random k x k unitary, sorted by argument in [0, 2pi).
/// Ginibre matrix -> Householder QR -> column phases fixed by diag(R).
std::vector<std::complex<double>> sample_haar_unitary_eigs(std::size_t k, Rng& rng);

/// Haar-random unitary itself (same construction as above).
Eigen::MatrixXcd sample_haar_unitary(std::size_t k, Rng& rng);

/// Dense Hermitian GUE matrix with density proportional to exp(-||X||_F^2 / 2):
/// real N(0,1) diagonal, off-diagonal real and imaginary parts N(0, 1/2).
/// Its eigenvalue law matches `sample_gue_tridiag`. Intended as a test oracle.
Eigen::MatrixXcd sample_gue_dense(std::size_t k, Rng& rng);

}  // namespace debias
