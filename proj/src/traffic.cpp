#include "pvtee/traffic.hpp"

#include <cmath>
#include <numbers>

#include "pvtee/error.hpp"

namespace pvtee::traffic {

TrafficLaw TrafficLaw::from_bits(double theta, double rho_min_bits) {
  TrafficLaw law{theta, rho_min_bits * std::numbers::ln2};
  law.validate();
  return law;
}

void TrafficLaw::validate() const {
  if (!(theta > 1.0 && theta <= 2.0)) throw DomainError("tail index must lie in (1,2]");
  if (!(rho_min > 0.0)) throw DomainError("minimum rate must be positive");
}

double pareto_pdf(double x, const TrafficLaw& law) {
  if (x < law.rho_min) return 0.0;
  return law.theta * std::pow(law.rho_min, law.theta) / std::pow(x, law.theta + 1.0);
}

double pareto_ccdf(double x, const TrafficLaw& law) {
  if (x <= law.rho_min) return 1.0;
  return std::pow(law.rho_min / x, law.theta);
}

double pareto_cdf(double x, const TrafficLaw& law) { return 1.0 - pareto_ccdf(x, law); }

double mean_rate(const TrafficLaw& law) { return law.theta * law.rho_min / (law.theta - 1.0); }

double truncated_mean_rate(double t, const TrafficLaw& law) {
  if (t <= law.rho_min) return 0.0;
  return mean_rate(law) * (1.0 - std::pow(law.rho_min / t, law.theta - 1.0));
}

double mean_cell_traffic(const TrafficLaw& law, double lambda_m, double lambda_b) {
  if (!(lambda_b > 0.0)) throw DomainError("BS intensity must be positive");
  if (lambda_m < 0.0) throw DomainError("MS intensity must be non-negative");
  return lambda_m / lambda_b * mean_rate(law);
}

double rate_from_uniform(double u, const TrafficLaw& law) {
  if (!(u > 0.0 && u <= 1.0)) throw DomainError("uniform variate must lie in (0, 1]");
  return law.rho_min * std::pow(u, -1.0 / law.theta);
}

double sample_rate(const TrafficLaw& law, Rng& rng) { return rate_from_uniform(rng.uniform(), law); }

}  // namespace pvtee::traffic
