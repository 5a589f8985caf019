#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "debias/measure.hpp"
#include "debias/regression.hpp"
#include "debias/target.hpp"

namespace debias {

enum class Method {
  kDebiased,
  kLeverageOnly,
  kRandomPhase,  ///< circle only: shifted roots of unity
};

std::string_view method_name(Method method) noexcept;
/// Accepts "debiased", "leverage_only" (or "leverage") and "random_phase".
Method parse_method(std::string_view name);

struct ExperimentConfig {
  Measure measure = Measure::uniform();
  int degree = 15;
  std::vector<std::size_t> sample_counts{35};
  std::size_t trials = 20000;
  Target target;
  std::uint64_t seed = 0;
  std::vector<Method> methods{Method::kDebiased, Method::kLeverageOnly};
  unsigned threads = 1;
  bool keep_trials = false;

  /// Throws InvalidArgument on an empty method list, T = 0, n < d + 1,
  /// or a target that does not fit the measure.
  void validate() const;
};

struct TrialRecord {
  Method method = Method::kDebiased;
  std::size_t n = 0;
  std::size_t trial = 0;
  /// Real coefficients, or (Re c_0, Im c_0, Re c_1, ...) on the circle.
  std::vector<double> coeffs;
  double relative_error = 0.0;
};

/// One fit for `method` on trial stream `state`.
PolyFit run_method(Method method, const OrthoBasis* basis, int degree, std::size_t n,
                   const Target& target, const RngState& state);

/// Excess error E|p - f|^2 - E|p* - f|^2 by Parseval, i.e. ||x - c||^2.
double excess_error(const PolyFit& fit, const TargetReference& ref);

/// E|p - f|^2 / E|p* - f|^2 - 1, clipped below at 0, via Parseval.
/// Throws InvalidArgument if E|p* - f|^2 <= 1e-14 (undefined ratio).
double relative_error(const PolyFit& fit, const TargetReference& ref);
double relative_error(std::span<const double> flat_coeffs, const TargetReference& ref);

/// Coefficients in TrialRecord layout.
std::vector<double> flatten_coeffs(const PolyFit& fit);

struct CoefficientSummary {
  Method method;
  std::vector<double> mean;
  std::vector<double> stddev;
  std::vector<double> std_error;
  /// Mean approximation evaluated on `BiasStudyResult::grid`.
  std::vector<double> grid_mean;
  std::vector<double> grid_stddev;
};

struct BiasStudyResult {
  ExperimentConfig config;
  std::vector<double> oracle;  // flattened like TrialRecord::coeffs
  std::vector<CoefficientSummary> methods;
  /// 512 plot abscissae: t on the real line, theta on the circle.
  std::vector<double> grid;
  std::vector<double> grid_oracle;
  std::vector<TrialRecord> trials;
};

struct CurvePoint {
  Method method;
  std::size_t n;
  double q10;
  double median;
  double q90;
  std::size_t trials;
};

struct ErrorCurveResult {
  ExperimentConfig config;
  std::vector<CurvePoint> points;  // sorted by (method, n)
  std::vector<TrialRecord> trials;
};

/// T trials per method at n = sample_counts.front(); per-coefficient mean,
/// standard deviation and standard error.
BiasStudyResult run_bias_study(const ExperimentConfig& config);

/// For every n and method, T trials; nearest-rank 10%, 50% and 90% quantiles
/// of the relative error.
ErrorCurveResult run_error_curves(const ExperimentConfig& config);

/// Nearest-rank quantile of an ascending-sorted sample: element
/// ceil(q * size) - 1, clamped to the valid range.
double nearest_rank_quantile(std::span<const double> sorted, double q);

/// Runs body(i) for i in [0, count) on up to `threads` workers. Results
/// must be written to slot i so the outcome is independent of scheduling.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace debias
