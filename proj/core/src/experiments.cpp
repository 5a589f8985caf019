#include "debias/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <numbers>
#include <string>
#include <thread>

#include "debias/errors.hpp"

namespace debias {
namespace {

constexpr std::size_t kGridSize = 512;
constexpr double kResidualFloor = 1e-14;

std::vector<double> flatten_reference(const TargetReference& ref) {
  if (ref.measure.is_real()) return ref.coeffs;
  std::vector<double> flat;
  flat.reserve(2 * ref.fourier_coeffs.size());
  for (const auto& c : ref.fourier_coeffs) {
    flat.push_back(c.real());
    flat.push_back(c.imag());
  }
  return flat;
}

double squared_distance(std::span<const double> x, std::span<const double> c) {
  if (x.size() != c.size()) throw InvalidArgument("coefficient vector has the wrong length");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double diff = x[i] - c[i];
    sum += diff * diff;
  }
  return sum;
}

// Relative error when defined, otherwise the excess error ||x - c||^2.
double trial_error(std::span<const double> flat, const TargetReference& ref,
                   std::span<const double> oracle) {
  const double residual = ref.optimal_residual();
  const double excess = squared_distance(flat, oracle);
  return residual > kResidualFloor ? excess / residual : excess;
}

// Features phi(x) such that the plotted value is dot(phi(x), flat coefficients).
void plot_features(Measure measure, const OrthoBasis* basis, int degree, double x,
                   std::span<double> out) {
  if (measure.is_real()) {
    basis->evaluate(x, out);
    return;
  }
  for (int k = 0; k <= degree; ++k) {
    const double kd = static_cast<double>(k);
    out[2 * static_cast<std::size_t>(k)] = std::cos(kd * x);
    out[2 * static_cast<std::size_t>(k) + 1] = -std::sin(kd * x);
  }
}

std::vector<double> make_grid(Measure measure) {
  double lo = -1.0;
  double hi = 1.0;
  if (measure.kind() == MeasureKind::kGaussian) {
    lo = -4.0;
    hi = 4.0;
  } else if (!measure.is_real()) {
    lo = 0.0;
    hi = 2.0 * std::numbers::pi;
  }
  std::vector<double> grid(kGridSize);
  for (std::size_t i = 0; i < kGridSize; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(kGridSize - 1);
  }
  return grid;
}

}  // namespace

std::string_view method_name(Method method) noexcept {
  switch (method) {
    case Method::kDebiased:
      return "debiased";
    case Method::kLeverageOnly:
      return "leverage_only";
    case Method::kRandomPhase:
      return "random_phase";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "debiased") return Method::kDebiased;
  if (name == "leverage_only" || name == "leverage") return Method::kLeverageOnly;
  if (name == "random_phase") return Method::kRandomPhase;
  throw InvalidArgument("unknown method '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  if (degree < 0) throw InvalidArgument("d must be nonnegative");
  if (trials == 0) throw InvalidArgument("trials must be at least 1");
  if (methods.empty()) throw InvalidArgument("method list is empty");
  if (sample_counts.empty()) throw InvalidArgument("list of n values is empty");
  for (std::size_t n : sample_counts) {
    if (n < static_cast<std::size_t>(degree) + 1) throw InvalidArgument("n must be at least d+1");
  }
  for (Method m : methods) {
    if (m == Method::kRandomPhase && measure.is_real()) {
      throw InvalidArgument("random_phase is only defined on the circle");
    }
  }
  target.check_compatible(measure);
}

PolyFit run_method(Method method, const OrthoBasis* basis, int degree, std::size_t n,
                   const Target& target, const RngState& state) {
  if (basis != nullptr) {
    const RealOracle f = [&target](double t) { return target(t); };
    switch (method) {
      case Method::kDebiased:
        return debiased_fit(*basis, n, f, state);
      case Method::kLeverageOnly:
        return leverage_only_fit(*basis, n, f, state);
      case Method::kRandomPhase:
        break;
    }
    throw InvalidArgument("random_phase is only defined on the circle");
  }
  const CircleOracle f = [&target](std::complex<double> z) { return target(z); };
  switch (method) {
    case Method::kDebiased:
      return fourier_debiased_fit(degree, n, f, state);
    case Method::kLeverageOnly:
      return fourier_leverage_fit(degree, n, f, state);
    case Method::kRandomPhase:
      return fourier_random_phase_fit(degree, n, f, state);
  }
  throw InvalidArgument("unknown method");
}

std::vector<double> flatten_coeffs(const PolyFit& fit) {
  if (fit.measure.is_real()) return {fit.coeffs.data(), fit.coeffs.data() + fit.coeffs.size()};
  std::vector<double> flat;
  flat.reserve(2 * static_cast<std::size_t>(fit.fourier_coeffs.size()));
  for (const auto& c : fit.fourier_coeffs) {
    flat.push_back(c.real());
    flat.push_back(c.imag());
  }
  return flat;
}

double excess_error(const PolyFit& fit, const TargetReference& ref) {
  return squared_distance(flatten_coeffs(fit), flatten_reference(ref));
}

double relative_error(std::span<const double> flat_coeffs, const TargetReference& ref) {
  const double residual = ref.optimal_residual();
  if (!(residual > kResidualFloor)) {
    throw InvalidArgument("relative error is undefined: the target is represented exactly (E|p*-f|^2 = 0)");
  }
  // E|p - f|^2 = E|p* - f|^2 + ||x - c||^2 (Parseval), so the ratio minus one
  // is ||x - c||^2 / E|p* - f|^2 and is never negative.
  return std::max(0.0, squared_distance(flat_coeffs, flatten_reference(ref)) / residual);
}

double relative_error(const PolyFit& fit, const TargetReference& ref) {
  return relative_error(flatten_coeffs(fit), ref);
}

double nearest_rank_quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw InvalidArgument("quantile of an empty sample");
  const double rank = std::ceil(q * static_cast<double>(sorted.size()) - 1e-9);
  const auto idx = static_cast<std::ptrdiff_t>(rank) - 1;
  const auto clamped = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(sorted.size()) - 1);
  return sorted[static_cast<std::size_t>(clamped)];
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::size_t first_error_index = count;
  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (i < first_error_index) {
          first_error_index = i;
          first_error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

BiasStudyResult run_bias_study(const ExperimentConfig& config) {
  config.validate();
  const std::size_t n = config.sample_counts.front();
  const std::size_t T = config.trials;
  const TargetReference ref = make_reference(config.measure, config.degree, config.target);
  std::optional<OrthoBasis> basis;
  if (config.measure.is_real()) basis.emplace(config.measure, config.degree);
  const OrthoBasis* basis_ptr = basis ? &*basis : nullptr;

  BiasStudyResult result;
  result.config = config;
  result.oracle = flatten_reference(ref);
  result.grid = make_grid(config.measure);
  const std::size_t dim = result.oracle.size();

  std::vector<std::vector<double>> features(kGridSize, std::vector<double>(dim));
  for (std::size_t g = 0; g < kGridSize; ++g) {
    plot_features(config.measure, basis_ptr, config.degree, result.grid[g], features[g]);
  }
  result.grid_oracle.resize(kGridSize);
  for (std::size_t g = 0; g < kGridSize; ++g) {
    double v = 0.0;
    for (std::size_t k = 0; k < dim; ++k) v += features[g][k] * result.oracle[k];
    result.grid_oracle[g] = v;
  }

  for (Method method : config.methods) {
    std::vector<TrialRecord> records(T);
    parallel_for(T, config.threads, [&](std::size_t trial) {
      const PolyFit fit = run_method(method, basis_ptr, config.degree, n, config.target,
                                     trial_stream(config.seed, trial));
      TrialRecord& rec = records[trial];
      rec.method = method;
      rec.n = n;
      rec.trial = trial;
      rec.coeffs = flatten_coeffs(fit);
      rec.relative_error = trial_error(rec.coeffs, ref, result.oracle);
    });

    CoefficientSummary summary;
    summary.method = method;
    summary.mean.assign(dim, 0.0);
    for (const auto& rec : records) {
      for (std::size_t k = 0; k < dim; ++k) summary.mean[k] += rec.coeffs[k];
    }
    for (double& m : summary.mean) m /= static_cast<double>(T);

    std::vector<double> cov(dim * dim, 0.0);
    for (const auto& rec : records) {
      for (std::size_t i = 0; i < dim; ++i) {
        const double di = rec.coeffs[i] - summary.mean[i];
        for (std::size_t j = 0; j < dim; ++j) cov[i * dim + j] += di * (rec.coeffs[j] - summary.mean[j]);
      }
    }
    const double denom = T > 1 ? static_cast<double>(T - 1) : 1.0;
    for (double& c : cov) c /= denom;

    summary.stddev.resize(dim);
    summary.std_error.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      summary.stddev[k] = std::sqrt(std::max(0.0, cov[k * dim + k]));
      summary.std_error[k] = summary.stddev[k] / std::sqrt(static_cast<double>(T));
    }
    summary.grid_mean.resize(kGridSize);
    summary.grid_stddev.resize(kGridSize);
    for (std::size_t g = 0; g < kGridSize; ++g) {
      const auto& phi = features[g];
      double mean = 0.0;
      double var = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        mean += phi[i] * summary.mean[i];
        for (std::size_t j = 0; j < dim; ++j) var += phi[i] * cov[i * dim + j] * phi[j];
      }
      summary.grid_mean[g] = mean;
      summary.grid_stddev[g] = std::sqrt(std::max(0.0, var));
    }
    result.methods.push_back(std::move(summary));
    if (config.keep_trials) {
      result.trials.insert(result.trials.end(), std::make_move_iterator(records.begin()),
                           std::make_move_iterator(records.end()));
    }
  }
  return result;
}

ErrorCurveResult run_error_curves(const ExperimentConfig& config) {
  config.validate();
  const TargetReference ref = make_reference(config.measure, config.degree, config.target);
  const std::vector<double> oracle = flatten_reference(ref);
  std::optional<OrthoBasis> basis;
  if (config.measure.is_real()) basis.emplace(config.measure, config.degree);
  const OrthoBasis* basis_ptr = basis ? &*basis : nullptr;

  std::vector<std::size_t> counts = config.sample_counts;
  std::sort(counts.begin(), counts.end());
  counts.erase(std::unique(counts.begin(), counts.end()), counts.end());

  const std::size_t T = config.trials;
  const std::size_t per_method = counts.size() * T;
  std::vector<TrialRecord> records(config.methods.size() * per_method);
  // Every (method, n) pair reuses trial_stream(seed, trial), so methods and
  // sample sizes are compared on common random numbers.
  parallel_for(records.size(), config.threads, [&](std::size_t job) {
    const std::size_t m = job / per_method;
    const std::size_t c = (job % per_method) / T;
    const std::size_t trial = job % T;
    const PolyFit fit = run_method(config.methods[m], basis_ptr, config.degree, counts[c],
                                   config.target, trial_stream(config.seed, trial));
    TrialRecord& rec = records[job];
    rec.method = config.methods[m];
    rec.n = counts[c];
    rec.trial = trial;
    rec.coeffs = flatten_coeffs(fit);
    rec.relative_error = trial_error(rec.coeffs, ref, oracle);
  });

  ErrorCurveResult result;
  result.config = config;
  std::vector<double> errors(T);
  for (std::size_t m = 0; m < config.methods.size(); ++m) {
    for (std::size_t c = 0; c < counts.size(); ++c) {
      const std::size_t base = m * per_method + c * T;
      for (std::size_t t = 0; t < T; ++t) errors[t] = records[base + t].relative_error;
      std::sort(errors.begin(), errors.end());
      result.points.push_back(CurvePoint{config.methods[m], counts[c],
                                         nearest_rank_quantile(errors, 0.1),
                                         nearest_rank_quantile(errors, 0.5),
                                         nearest_rank_quantile(errors, 0.9), T});
    }
  }
  if (config.keep_trials) result.trials = std::move(records);
  return result;
}

}  // namespace debias
