#pragma once

#include "pvtee/rng.hpp"

namespace pvtee::traffic {

/// Pareto per-MS rate law. Rates are spectral efficiencies in nats.
struct TrafficLaw {
  double theta = 1.8;     ///< tail index, 1 < theta <= 2
  double rho_min = 0.0;   ///< nat/s/Hz

  /// rho_min given in bit/s/Hz.
  static TrafficLaw from_bits(double theta, double rho_min_bits);
  void validate() const;
};

double pareto_pdf(double x, const TrafficLaw& law);
double pareto_cdf(double x, const TrafficLaw& law);
double pareto_ccdf(double x, const TrafficLaw& law);

/// theta * rho_min / (theta - 1).
double mean_rate(const TrafficLaw& law);

/// E[rho 1(rho < t)].
double truncated_mean_rate(double t, const TrafficLaw& law);

/// Mean traffic of the typical cell, (lambda_m / lambda_b) * mean_rate.
double mean_cell_traffic(const TrafficLaw& law, double lambda_m, double lambda_b);

/// Inverse-CDF draw; decreasing in u.
double rate_from_uniform(double u, const TrafficLaw& law);
double sample_rate(const TrafficLaw& law, Rng& rng);

}  // namespace pvtee::traffic
