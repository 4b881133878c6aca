#pragma once

#include <optional>
#include <string>

#include "pvtee/channel.hpp"
#include "pvtee/energy.hpp"
#include "pvtee/interference.hpp"
#include "pvtee/traffic.hpp"

namespace pvtee {

/// Every scenario parameter. Intensities are per m^2, powers in W, rates in
/// nat/s/Hz.
struct NetworkConfig {
  double lambda_b = 0.0;
  double lambda_m = 0.0;
  double lambda_inf = 0.0;
  double sigma = 4.0;  ///< path-loss exponent
  channel::FadingParams fading;
  traffic::TrafficLaw traffic;
  energy::PowerModel power;
  double tx_power_moment = 1e-2;  ///< E[P_T^alpha], W^alpha
  double bandwidth = 1.0;         ///< multiplier on per-Hz rates
  int exponent_average = 2;       ///< non-outage exponent in the EE numerator
  int exponent_waterfill = 2;
  /// Water-filling noise level; unset means the drawn interference power.
  std::optional<double> waterfill_fixed_noise;

  /// The default scenario (800 m BS spacing, 30 MS per BS, 8x4 antennas).
  static NetworkConfig defaults();

  /// Throws ConfigError naming the offending field.
  void validate() const;

  double alpha() const { return 2.0 / sigma; }
  double ms_per_bs() const { return lambda_m / lambda_b; }
  /// Probability that the typical cell holds no MS, exp(-lambda_m / lambda_b).
  double empty_cell_probability() const;
  interference::InterfererModel interferers() const;
  interference::StableLaw stable_law() const;
};

/// JSON text with unit-suffixed keys. Every required key must be present;
/// errors are ConfigError with the key as field().
NetworkConfig parse_config(const std::string& json_text);
std::string dump_config(const NetworkConfig& config);

/// Assigns one named parameter. Accepts the JSON keys plus the ratios
/// "ms_per_bs" and "inf_per_bs".
void set_parameter(NetworkConfig& config, const std::string& name, double value);

}  // namespace pvtee
