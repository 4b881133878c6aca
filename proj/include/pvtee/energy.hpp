#pragma once

#include <iosfwd>
#include <string>

namespace pvtee::energy {

struct PowerModel {
  double eta = 0.38;    ///< amplifier efficiency in (0, 1]
  double p_dyn = 83.0;  ///< W per active antenna
  double p_sta = 45.5;  ///< W
  double p_max = 40.0;  ///< W, transmit cap

  void validate() const;
};

enum class Scheme { average, waterfill };

const char* scheme_name(Scheme s);

struct EnergyReport {
  Scheme scheme = Scheme::average;
  double ee = 0.0;               ///< nat/J (per unit bandwidth multiplier)
  double ee_stderr = 0.0;        ///< 0 for analytic results
  double mean_traffic = 0.0;     ///< nat/s/Hz
  double mean_real_power = 0.0;  ///< W, E[P 1(P <= P_max)]
  double non_outage = 0.0;       ///< F(P_max)
  int exponent = 2;              ///< power of the non-outage factor in the numerator
  double bandwidth = 1.0;
};

/// P_tx / eta + nt p_dyn + p_sta.
double bs_power(double transmit_power, int nt, const PowerModel& model);

/// EE = T F^e / (P_real / eta + (nt p_dyn + p_sta) F^(e - 1)).
/// e = 1 gives the single-factor form, e = 2 the squared form.
EnergyReport assemble_ee(double mean_traffic, double non_outage, double mean_real_power, int nt,
                         const PowerModel& model, int exponent);

/// Partial derivatives of EE with respect to (F, P_real), for delta-method
/// standard errors.
struct EeGradient {
  double d_non_outage = 0.0;
  double d_real_power = 0.0;
};
EeGradient ee_gradient(double mean_traffic, double non_outage, double mean_real_power, int nt, const PowerModel& model,
                       int exponent);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const EnergyReport& r);

}  // namespace pvtee::energy
