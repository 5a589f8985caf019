#pragma once

#include <vector>

#include "debias/tridiagonal.hpp"

namespace debias {

/// All eigenvalues of `t` in ascending order.
///
/// Implicit QL with Wilkinson shifts. An off-diagonal entry is deflated once
/// |beta_i| <= eps * (|alpha_i| + |alpha_{i+1}|). If any eigenvalue needs more
/// than 50 sweeps the whole spectrum is recomputed by Sturm bisection.
/// Throws InvalidArgument for malformed input and EigenConvergenceError if
/// bisection also fails.
std::vector<double> tridiag_eigenvalues(const TridiagonalMatrix& t);

/// Sturm-sequence bisection on its own (the fallback path).
std::vector<double> tridiag_eigenvalues_bisection(const TridiagonalMatrix& t);

/// In-place QL core used by `tridiag_eigenvalues`. `diag` receives the
/// unsorted eigenvalues; `work` must hold the k - 1 off-diagonals followed by
/// one spare slot and is destroyed. Returns false if the sweep cap was hit.
bool tridiag_ql_inplace(std::vector<double>& diag, std::vector<double>& work);

}  // namespace debias
