#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace debias {

/// Identifies one reproducible random stream. Equal states give equal draws.
struct RngState {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  friend bool operator==(const RngState&, const RngState&) = default;
};

/// Tags for sub-streams derived from a per-trial state.
enum class StreamPurpose : std::uint64_t {
  kTrial = 1,
  kDppNodes = 2,
  kLeverageNodes = 3,
  kPhase = 4,
};

/// Counter-based derivation: the result depends only on the inputs, never on
/// how many streams were derived before it.
RngState derive_stream(const RngState& parent, std::uint64_t counter);
RngState derive_stream(const RngState& parent, StreamPurpose purpose);

/// State for trial `trial` of an experiment seeded with `base_seed`.
RngState trial_stream(std::uint64_t base_seed, std::uint64_t trial);

/// Variate generator over a 64-bit Mersenne twister. All transforms are
/// implemented here so draws do not depend on the standard library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(const RngState& state);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  /// Uniform index in [0, n). Requires n > 0.
  std::size_t index(std::size_t n);
  double normal();
  /// Gamma(shape, scale = 1) by Marsaglia-Tsang; shape > 0.
  double gamma(double shape);
  /// Beta(a, b) as a ratio of gammas.
  double beta(double a, double b);
  /// Chi with `dof` degrees of freedom, sqrt(2 Gamma(dof/2)).
  double chi(double dof);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace debias
