#pragma once

#include <iosfwd>
#include <vector>

#include "pvtee/rng.hpp"

namespace pvtee::geometry {

/// Finite disc standing in for the plane. Points in the outer guard annulus
/// contribute interference but are never used as measurement locations.
struct Window {
  double radius = 0.0;  ///< meters
  double guard = 0.0;   ///< width of the guard annulus, meters

  double interior_radius() const { return radius - guard; }
  void validate() const;

  /// Disc of radius 10/sqrt(pi * lambda) with a guard of 20% of the radius.
  static Window for_intensity(double intensity_per_m2);
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct PointPattern {
  std::vector<Point> points;
  double intensity = 0.0;  ///< per m^2
  Window window;
};

/// Homogeneous PPP on the window disc: Poisson count, uniform positions.
PointPattern sample_ppp(double intensity, const Window& window, Rng& rng);

/// Density of the distance to the nearest point, 2 pi lambda r exp(-pi lambda r^2).
double nearest_distance_pdf(double r, double intensity);
double nearest_distance_cdf(double r, double intensity);

/// Inverse of nearest_distance_cdf; increasing in u.
double nearest_distance_quantile(double u, double intensity);
double sample_nearest_distance(double intensity, Rng& rng);

/// Density of V = R^sigma for the nearest distance R. Requires sigma > 2.
double pathloss_distance_pdf(double v, double intensity, double sigma);
double pathloss_distance_cdf(double v, double intensity, double sigma);

/// Euclidean distance from `from` to the closest point of the pattern
/// (infinity for an empty pattern).
double nearest_point_distance(const PointPattern& pattern, Point from);

/// Writes "x_m,y_m" rows with a header line.
void write_csv(const PointPattern& pattern, std::ostream& out);

}  // namespace pvtee::geometry
