#include "debias/trieig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "debias/errors.hpp"

namespace debias {

void TridiagonalMatrix::validate() const {
  if (diag.empty()) throw InvalidArgument("tridiagonal matrix must be at least 1x1");
  if (offdiag.size() + 1 != diag.size()) {
    throw InvalidArgument("tridiagonal matrix: off-diagonal length must be k - 1");
  }
  for (double v : diag) {
    if (!std::isfinite(v)) throw InvalidArgument("tridiagonal matrix has a non-finite diagonal");
  }
  for (double v : offdiag) {
    if (!std::isfinite(v)) throw InvalidArgument("tridiagonal matrix has a non-finite off-diagonal");
  }
}

bool tridiag_ql_inplace(std::vector<double>& d, std::vector<double>& e) {
  constexpr int kMaxSweeps = 50;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const std::size_t n = d.size();
  if (n <= 1) return true;
  e[n - 1] = 0.0;

  for (std::size_t l = 0; l < n; ++l) {
    int sweeps = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kEps * dd) break;
      }
      if (m != l) {
        if (sweeps++ == kMaxSweeps) return false;
        // Wilkinson shift from the leading 2x2 block.
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  return true;
}

namespace {

// Number of eigenvalues strictly less than x (Sturm sequence via LDL^T pivots).
std::size_t count_below(const TridiagonalMatrix& t, double x, double pivot_floor) {
  std::size_t count = 0;
  double q = t.diag[0] - x;
  if (std::abs(q) < pivot_floor) q = -pivot_floor;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < t.diag.size(); ++i) {
    const double b = t.offdiag[i - 1];
    q = t.diag[i] - x - b * b / q;
    if (std::abs(q) < pivot_floor) q = -pivot_floor;
    if (q < 0.0) ++count;
  }
  return count;
}

}  // namespace

std::vector<double> tridiag_eigenvalues_bisection(const TridiagonalMatrix& t) {
  t.validate();
  const std::size_t n = t.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? std::abs(t.offdiag[i - 1]) : 0.0;
    const double right = i + 1 < n ? std::abs(t.offdiag[i]) : 0.0;
    lo = std::min(lo, t.diag[i] - left - right);
    hi = std::max(hi, t.diag[i] + left + right);
    norm = std::max(norm, std::abs(t.diag[i]) + left + right);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  const double pivot_floor = std::max(norm, 1.0) * eps * eps;
  const double pad = 2.0 * eps * std::max(norm, std::numeric_limits<double>::min());
  lo -= pad;
  hi += pad;

  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Smallest x with count_below(x) > k.
    double a = lo;
    double b = hi;
    int iter = 0;
    while (b - a > 2.0 * eps * std::max(std::abs(a), std::abs(b)) + pivot_floor) {
      if (++iter > 4000) {
        throw EigenConvergenceError("bisection failed to converge for eigenvalue " +
                                    std::to_string(k));
      }
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (count_below(t, mid, pivot_floor) > k) {
        b = mid;
      } else {
        a = mid;
      }
    }
    values[k] = 0.5 * (a + b);
  }
  return values;
}

std::vector<double> tridiag_eigenvalues(const TridiagonalMatrix& t) {
  t.validate();
  std::vector<double> d = t.diag;
  std::vector<double> e(t.size());
  std::copy(t.offdiag.begin(), t.offdiag.end(), e.begin());
  if (!tridiag_ql_inplace(d, e)) return tridiag_eigenvalues_bisection(t);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace debias
