#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

#include "debias/orthopoly.hpp"

namespace debias::testing {

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical_value(double alpha, std::size_t n, std::size_t m) {
  const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  return c * std::sqrt((nd + md) / (nd * md));
}

double normal_cdf(double t) { return 0.5 * std::erfc(-t / std::numbers::sqrt2); }
double normal_pdf(double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi); }

double chi_square_sf(double statistic, std::size_t dof) {
  const boost::math::chi_squared_distribution<double> dist(static_cast<double>(dof));
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

PairHistogram::PairHistogram(double lo, double hi, std::size_t bins)
    : lo_(lo), hi_(hi), bins_(bins), counts_(bins * bins, 0) {}

void PairHistogram::add(double x, double y) {
  if (x > y) std::swap(x, y);
  ++total_;
  if (x < lo_ || y >= hi_) {
    ++overflow_;
    return;
  }
  const double scale = static_cast<double>(bins_) / (hi_ - lo_);
  const auto i = std::min(bins_ - 1, static_cast<std::size_t>((x - lo_) * scale));
  const auto j = std::min(bins_ - 1, static_cast<std::size_t>((y - lo_) * scale));
  ++counts_[i * bins_ + j];
}

ChiSquareResult chi_square_pairs(const PairHistogram& hist,
                                 const std::function<double(double, double)>& density,
                                 double normalizer) {
  const QuadratureRule rule = gauss_legendre(8);
  const std::size_t bins = hist.bins();
  const double width = (hist.hi() - hist.lo()) / static_cast<double>(bins);
  const double total = static_cast<double>(hist.total());

  const auto cell_mass = [&](std::size_t i, std::size_t j) {
    const double xa = hist.lo() + width * static_cast<double>(i);
    const double ya = hist.lo() + width * static_cast<double>(j);
    double sum = 0.0;
    for (std::size_t a = 0; a < rule.nodes.size(); ++a) {
      const double x = xa + 0.5 * width * (rule.nodes[a] + 1.0);
      for (std::size_t b = 0; b < rule.nodes.size(); ++b) {
        const double y = ya + 0.5 * width * (rule.nodes[b] + 1.0);
        sum += rule.weights[a] * rule.weights[b] * density(x, y);
      }
    }
    return sum * 0.25 * width * width / normalizer;
  };

  ChiSquareResult result;
  double covered = 0.0;
  double pooled_expected = 0.0;
  double pooled_observed = static_cast<double>(hist.overflow());
  std::size_t cells = 0;
  for (std::size_t i = 0; i < bins; ++i) {
    for (std::size_t j = i; j < bins; ++j) {
      // Ordered pairs carry twice the symmetric density off the diagonal; on a
      // diagonal cell the half-square integral of 2q equals the full-square integral of q.
      const double p = (i == j ? 1.0 : 2.0) * cell_mass(i, j);
      covered += p;
      const double expected = p * total;
      const double observed = static_cast<double>(hist.count(i, j));
      if (expected < 5.0) {
        pooled_expected += expected;
        pooled_observed += observed;
        ++result.pooled_cells;
        continue;
      }
      result.statistic += (observed - expected) * (observed - expected) / expected;
      ++cells;
    }
  }
  pooled_expected += std::max(0.0, 1.0 - covered) * total;
  if (pooled_expected > 0.0) {
    result.statistic += (pooled_observed - pooled_expected) * (pooled_observed - pooled_expected) / pooled_expected;
    ++cells;
  }
  result.dof = cells - 1;
  result.p_value = chi_square_sf(result.statistic, result.dof);
  return result;
}

Moments moments(std::span<const double> xs) {
  Moments m;
  if (xs.empty()) return m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.stddev = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
  return m;
}

}  // namespace debias::testing
