#include "pvtee/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

#include "pvtee/error.hpp"

namespace pvtee::geometry {

using std::numbers::pi;

namespace {

void require_intensity(double intensity) {
  if (!(intensity > 0.0) || !std::isfinite(intensity)) {
    throw DomainError("intensity must be positive and finite");
  }
}

void require_sigma(double sigma) {
  if (!(sigma > 2.0)) throw DomainError("sigma must exceed 2");
}

}  // namespace

void Window::validate() const {
  if (!(guard > 0.0)) throw DomainError("window guard radius must be positive");
  if (!(radius > guard)) throw DomainError("window radius must exceed the guard radius");
}

Window Window::for_intensity(double intensity_per_m2) {
  require_intensity(intensity_per_m2);
  const double r = 10.0 / std::sqrt(pi * intensity_per_m2);
  return {r, 0.2 * r};
}

PointPattern sample_ppp(double intensity, const Window& window, Rng& rng) {
  require_intensity(intensity);
  if (!(window.radius >= 0.0)) throw DomainError("window radius must be non-negative");
  PointPattern out;
  out.intensity = intensity;
  out.window = window;
  const double mean = intensity * pi * window.radius * window.radius;
  std::poisson_distribution<long> count(mean > 0.0 ? mean : 1e-300);
  const long n = mean > 0.0 ? count(rng.engine()) : 0;
  out.points.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const double r = window.radius * std::sqrt(rng.uniform());
    const double phi = 2.0 * pi * rng.uniform();
    out.points.push_back({r * std::cos(phi), r * std::sin(phi)});
  }
  return out;
}

double nearest_distance_pdf(double r, double intensity) {
  require_intensity(intensity);
  if (r < 0.0) return 0.0;
  return 2.0 * pi * intensity * r * std::exp(-pi * intensity * r * r);
}

double nearest_distance_cdf(double r, double intensity) {
  require_intensity(intensity);
  if (r <= 0.0) return 0.0;
  return -std::expm1(-pi * intensity * r * r);
}

double nearest_distance_quantile(double u, double intensity) {
  require_intensity(intensity);
  if (!(u >= 0.0 && u < 1.0)) throw DomainError("quantile level must lie in [0, 1)");
  return std::sqrt(-std::log1p(-u) / (pi * intensity));
}

double sample_nearest_distance(double intensity, Rng& rng) {
  return nearest_distance_quantile(rng.uniform(), intensity);
}

double pathloss_distance_pdf(double v, double intensity, double sigma) {
  require_intensity(intensity);
  require_sigma(sigma);
  if (!(v > 0.0)) return 0.0;
  const double two_over = 2.0 / sigma;
  const double v_pow = std::pow(v, two_over);
  return (1.0 / sigma) * (v_pow / v) * 2.0 * pi * intensity * std::exp(-pi * intensity * v_pow);
}

double pathloss_distance_cdf(double v, double intensity, double sigma) {
  require_intensity(intensity);
  require_sigma(sigma);
  if (!(v > 0.0)) return 0.0;
  return -std::expm1(-pi * intensity * std::pow(v, 2.0 / sigma));
}

double nearest_point_distance(const PointPattern& pattern, Point from) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point& p : pattern.points) {
    best = std::min(best, std::hypot(p.x - from.x, p.y - from.y));
  }
  return best;
}

void write_csv(const PointPattern& pattern, std::ostream& out) {
  out << "x_m,y_m\n";
  out.precision(17);
  for (const Point& p : pattern.points) out << p.x << ',' << p.y << '\n';
}

}  // namespace pvtee::geometry
