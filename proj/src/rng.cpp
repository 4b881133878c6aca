#include "pvtee/rng.hpp"

#include <cmath>

namespace pvtee {

std::uint64_t Rng::mix(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = mix(seed);
  h = mix(h ^ (a + 0x632be59bd9b4e019ULL));
  h = mix(h ^ (b + 0x8cb92ba72f3d8dd7ULL));
  h = mix(h ^ (c + 0xa0761d6478bd642fULL));
  return h;
}

double Rng::uniform() {
  // 53 random bits, shifted off zero.
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double Rng::exponential() { return -std::log(uniform()); }

double Rng::gamma(double shape) {
  std::gamma_distribution<double> dist(shape, 1.0);
  return dist(engine_);
}

double Rng::normal() {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(engine_);
}

std::uint32_t poisson_quantile(double u, double mean) {
  if (!(mean > 0.0)) return 0;
  double pmf = std::exp(-mean);
  double cdf = pmf;
  std::uint32_t n = 0;
  while (cdf < u && n < 100000) {
    ++n;
    pmf *= mean / n;
    cdf += pmf;
    if (pmf == 0.0 && cdf < u) break;
  }
  return n;
}

}  // namespace pvtee
