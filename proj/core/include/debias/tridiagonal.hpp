#pragma once

#include <cstddef>
#include <vector>

namespace debias {

/// Real symmetric tridiagonal matrix stored as its diagonal (size k) and
/// off-diagonal (size k - 1).
struct TridiagonalMatrix {
  std::vector<double> diag;
  std::vector<double> offdiag;

  std::size_t size() const noexcept { return diag.size(); }

  /// Throws InvalidArgument on inconsistent lengths or non-finite entries.
  void validate() const;
};

}  // namespace debias
