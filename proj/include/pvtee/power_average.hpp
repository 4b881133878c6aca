#pragma once

#include <complex>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "pvtee/distribution.hpp"
#include "pvtee/energy.hpp"
#include "pvtee/network.hpp"
#include "pvtee/quadrature.hpp"

namespace pvtee::average {

/// Law of the SIR a rate demand needs: tau = exp(rho / B) - 1.
struct SirDemandLaw {
  traffic::TrafficLaw traffic;
  double bandwidth = 1.0;

  double z0() const;
};

double tau_pdf(double z, const SirDemandLaw& law);
double tau_cdf(double z, const SirDemandLaw& law);
/// expm1(rho / B), the SIR that carries rate rho.
double tau_from_rate(double rho, double bandwidth);

/// P_I * nt * R0^sigma * tau / H0.
double required_power_sample(double p_interference, double r0_sigma, double h0, double tau, int nt);

struct PerMsCfOptions {
  QuadratureSpec spec{1e-10, 1e-300, 400};
  /// Width of the log-H0 Gauss-Legendre panels in standard deviations of log H0.
  double node_panel = 1.0;
  /// Remember values by v. Useful when several populations share one
  /// per-MS law.
  bool memoize = false;
};

/// Characteristic function of the per-MS required power.
///
/// Conditioning on the interference and the serving distance leaves the
/// expectation over (H0, tau) of p / (p + G(w) (nt tau)^alpha H0^-alpha),
/// p = pi lambda_b. H0 is integrated on Gauss-Legendre nodes in log H0;
/// tau through its Pareto exponent s = log(rho / rho_min) ~ Exp(theta).
class PerMsPowerCf {
 public:
  struct Value {
    std::complex<double> phi;           ///< E[exp(j w P0)]
    std::complex<double> one_minus;     ///< 1 - phi, computed without cancellation
  };

  explicit PerMsPowerCf(const NetworkConfig& config, PerMsCfOptions options = {});

  /// Value at omega = exp(v).
  Value at_log(double v) const;
  std::complex<double> operator()(double omega) const;

  std::size_t node_count() const { return log_a_.size(); }
  /// |sum of node weights - 1| for the H0 density.
  double node_mass_error() const { return mass_error_; }

 private:
  double alpha_, cos_psi_, sin_psi_, log_scale_;
  double theta_, rho_min_, bandwidth_;
  double la_lo_, la_hi_;
  std::vector<double> a_, w_, log_a_;
  double mass_error_ = 0.0;
  double node_panel_sd_;
  QuadratureSpec spec_;
  bool memoize_;
  mutable std::mutex memo_mutex_;
  mutable std::unordered_map<double, Value> memo_;

  Value compute(double v) const;
};

/// Characteristic function of the summed power of a Poisson(lambda_m /
/// lambda_b) population, exp(-(lambda_m / lambda_b)(1 - phi_P0)).
class CellPowerCf {
 public:
  explicit CellPowerCf(const NetworkConfig& config);
  /// kappa = mean population.
  CellPowerCf(std::shared_ptr<const PerMsPowerCf> per_ms, double kappa);

  std::complex<double> at_log(double v) const;
  /// CF of the law conditioned on a nonempty cell.
  std::complex<double> continuous_at_log(double v) const;
  std::complex<double> operator()(double omega) const;
  double atom() const { return atom_; }
  const PerMsPowerCf& per_ms() const { return *per_ms_; }

 private:
  std::shared_ptr<const PerMsPowerCf> per_ms_;
  double kappa_;
  double atom_;
};

std::complex<double> cf_per_ms_power(double omega, const NetworkConfig& config);
std::complex<double> cf_cell_power(double omega, const NetworkConfig& config);

/// Log-spaced grid from p_max * 1e-4 to p_max * 25.
std::vector<double> default_power_grid(double p_max, int points = 241);

/// Cell-power law by CF inversion. Holds the inverter so later queries are
/// cheap.
class CellPowerLaw {
 public:
  /// Points queried later must lie in [x_min, x_max].
  CellPowerLaw(const NetworkConfig& config, double x_min, double x_max);
  CellPowerLaw(std::shared_ptr<const PerMsPowerCf> per_ms, double kappa, double x_min, double x_max);
  ~CellPowerLaw();
  CellPowerLaw(CellPowerLaw&&) noexcept;

  double atom() const { return atom_; }
  /// Includes the atom at zero.
  double cdf(double x) const;
  /// Density of the continuous part (weighted by 1 - atom).
  double pdf(double x) const;

  TabulatedDistribution tabulate(const std::vector<double>& grid) const;

  /// E[P 1(P <= cap)] = cap F(cap) - int_0^cap F.
  double truncated_mean(double cap) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  double atom_;
  double x_min_;
};

TabulatedDistribution invert_cell_power(const NetworkConfig& config, const std::vector<double>& grid);

/// Analytic EE of the average scheme.
energy::EnergyReport ee_average(const NetworkConfig& config);
/// Same, reusing a per-MS law built from a config that differs only in lambda_m.
energy::EnergyReport ee_average(const NetworkConfig& config, std::shared_ptr<const PerMsPowerCf> per_ms);

}  // namespace pvtee::average
