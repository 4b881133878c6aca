#pragma once

#include <cstdint>
#include <random>

namespace pvtee {

/// Seeded random stream. Every sampling routine takes one of these by
/// reference; there is no global generator.
///
/// Independent streams are derived from a base seed and up to three indices
/// (for example sweep point, replication, and purpose), so results do not
/// depend on the order in which replications are executed.
class Rng {
 public:
  using Engine = std::mt19937_64;

  explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}
  Rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0)
      : engine_(derive(seed, a, b, c)) {}

  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Exponential with unit mean.
  double exponential();
  /// Gamma with the given shape and unit scale.
  double gamma(double shape);
  double normal();

  Engine& engine() { return engine_; }

  static std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c);

 private:
  static std::uint64_t mix(std::uint64_t x);
  Engine engine_;
};

/// Poisson quantile: smallest n with P(N <= n) >= u. Monotone in both `u`
/// and `mean`, which is what couples cell populations across a sweep.
std::uint32_t poisson_quantile(double u, double mean);

}  // namespace pvtee
