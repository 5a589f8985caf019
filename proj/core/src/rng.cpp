#include "debias/rng.hpp"

#include <cmath>

#include "debias/errors.hpp"

namespace debias {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RngState derive_stream(const RngState& parent, std::uint64_t counter) {
  const std::uint64_t mixed = splitmix64(parent.stream ^ splitmix64(counter + 0x632be59bd9b4e019ULL));
  return RngState{parent.seed, mixed};
}

RngState derive_stream(const RngState& parent, StreamPurpose purpose) {
  return derive_stream(parent, static_cast<std::uint64_t>(purpose));
}

RngState trial_stream(std::uint64_t base_seed, std::uint64_t trial) {
  return derive_stream(RngState{base_seed, static_cast<std::uint64_t>(StreamPurpose::kTrial)},
                       trial);
}

Rng::Rng(const RngState& state) {
  std::seed_seq seq{static_cast<std::uint32_t>(state.seed),
                    static_cast<std::uint32_t>(state.seed >> 32),
                    static_cast<std::uint32_t>(state.stream),
                    static_cast<std::uint32_t>(state.stream >> 32)};
  engine_.seed(seq);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform_open() {
  double u;
  do {
    u = uniform();
  } while (u == 0.0);
  return u;
}

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw InvalidArgument("Rng::index: empty range");
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

// Marsaglia polar method.
double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

double Rng::gamma(double shape) {
  if (!(shape > 0.0)) throw InvalidArgument("Rng::gamma: shape must be positive");
  if (shape < 1.0) {
    // Boost to shape + 1, then G(a) = G(a+1) U^{1/a}.
    const double g = gamma(shape + 1.0);
    return g * std::pow(uniform_open(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::beta(double a, double b) {
  const double x = gamma(a);
  const double y = gamma(b);
  return x / (x + y);
}

double Rng::chi(double dof) { return std::sqrt(2.0 * gamma(0.5 * dof)); }

}  // namespace debias
