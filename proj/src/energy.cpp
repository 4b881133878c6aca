#include "pvtee/energy.hpp"

#include <cmath>
#include <ostream>

#include "pvtee/error.hpp"

namespace pvtee::energy {

void PowerModel::validate() const {
  if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("pa_efficiency", "amplifier efficiency must lie in (0,1]");
  if (!(p_dyn >= 0.0)) throw ConfigError("p_dyn_watt", "per-antenna circuit power must be non-negative");
  if (!(p_sta >= 0.0)) throw ConfigError("p_sta_watt", "static power must be non-negative");
  if (!(p_max > 0.0)) throw ConfigError("p_max_watt", "maximum transmit power must be positive");
}

const char* scheme_name(Scheme s) { return s == Scheme::average ? "average" : "waterfill"; }

double bs_power(double transmit_power, int nt, const PowerModel& model) {
  if (transmit_power < 0.0 || nt < 0) throw DomainError("transmit power and antenna count must be non-negative");
  return transmit_power / model.eta + nt * model.p_dyn + model.p_sta;
}

namespace {

double fixed_power(int nt, const PowerModel& model) { return nt * model.p_dyn + model.p_sta; }

void check(double non_outage, int exponent) {
  if (exponent != 1 && exponent != 2) throw DomainError("non-outage exponent must be 1 or 2");
  if (!(non_outage >= 0.0 && non_outage <= 1.0)) throw DomainError("non-outage probability must lie in [0, 1]");
}

}  // namespace

EnergyReport assemble_ee(double mean_traffic, double non_outage, double mean_real_power, int nt,
                         const PowerModel& model, int exponent) {
  check(non_outage, exponent);
  if (!std::isfinite(mean_traffic) || !std::isfinite(mean_real_power)) throw DomainError("EE ingredients must be finite");
  const double f_num = exponent == 2 ? non_outage * non_outage : non_outage;
  const double f_fixed = exponent == 2 ? non_outage : 1.0;
  const double denom = mean_real_power / model.eta + fixed_power(nt, model) * f_fixed;
  EnergyReport r;
  r.mean_traffic = mean_traffic;
  r.non_outage = non_outage;
  r.mean_real_power = mean_real_power;
  r.exponent = exponent;
  r.ee = denom > 0.0 ? mean_traffic * f_num / denom : 0.0;
  return r;
}

EeGradient ee_gradient(double mean_traffic, double non_outage, double mean_real_power, int nt, const PowerModel& model,
                       int exponent) {
  check(non_outage, exponent);
  const double c = fixed_power(nt, model);
  const double f = non_outage;
  EeGradient g;
  if (exponent == 1) {
    const double d = mean_real_power / model.eta + c;
    g.d_non_outage = mean_traffic / d;
    g.d_real_power = -mean_traffic * f / (d * d * model.eta);
  } else {
    const double d = mean_real_power / model.eta + c * f;
    g.d_non_outage = mean_traffic * (2.0 * f * d - f * f * c) / (d * d);
    g.d_real_power = -mean_traffic * f * f / (d * d * model.eta);
  }
  return g;
}

void write_csv_header(std::ostream& out) {
  out << "scheme,ee_nat_per_joule,ee_stderr,mean_traffic_nat_per_s_hz,mean_real_power_watt,non_outage,"
         "non_outage_exponent,bandwidth_multiplier";
}

void write_csv_row(std::ostream& out, const EnergyReport& r) {
  out.precision(10);
  out << scheme_name(r.scheme) << ',' << r.ee << ',' << r.ee_stderr << ',' << r.mean_traffic << ','
      << r.mean_real_power << ',' << r.non_outage << ',' << r.exponent << ',' << r.bandwidth;
}

}  // namespace pvtee::energy
