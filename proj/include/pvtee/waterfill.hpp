#pragma once

#include <optional>
#include <span>
#include <vector>

namespace pvtee::waterfill {

struct WaterfillConfig {
  /// Noise level in the water-filling floors N0 / lambda_l. Unset means
  /// the drawn interference power of each MS.
  std::optional<double> effective_noise;
  double max_power = 40.0;  ///< W
  double tolerance = 1e-9;  ///< relative bracket width
  int max_iterations = 400;

  void validate() const;
};

struct Allocation {
  std::vector<double> power;  ///< per eigenchannel, same order as the input
  double level = 0.0;         ///< water level nu
  std::size_t active = 0;
};

/// P_l = (nu - noise / lambda_l)+ with sum P_l = total_power. Zero
/// eigenvalues never receive power.
Allocation waterfill(std::span<const double> eigenvalues, double total_power, double noise);

/// B sum ln(1 + P_l lambda_l / P_I).
double wf_rate(std::span<const double> eigenvalues, std::span<const double> allocation, double p_interference,
               double bandwidth = 1.0);

/// Rate with total_power split evenly over the nonzero eigenchannels.
double equal_split_rate(std::span<const double> eigenvalues, double total_power, double p_interference,
                        double bandwidth = 1.0);

struct Balance {
  double power = 0.0;  ///< W; +inf when the demand exceeds every finite power
  bool outage = false; ///< power > max_power
  int iterations = 0;
};

/// Smallest total power whose water-filling rate reaches rho. Brackets
/// geometrically from 10 max_power, then bisects.
Balance solve_balance(double rho, std::span<const double> eigenvalues, double p_interference,
                      const WaterfillConfig& config, double bandwidth = 1.0);

}  // namespace pvtee::waterfill
