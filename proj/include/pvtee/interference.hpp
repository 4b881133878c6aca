#pragma once

#include <complex>
#include <vector>

#include "pvtee/channel.hpp"
#include "pvtee/distribution.hpp"
#include "pvtee/geometry.hpp"
#include "pvtee/rng.hpp"

namespace pvtee::interference {

/// Totally skewed stable law, CF exp(-delta |w|^alpha (1 - j sign(w) tan(pi alpha / 2))).
struct StableLaw {
  double alpha = 0.5;
  double beta = 1.0;
  double delta = 0.0;
  double mu = 0.0;

  /// Throws DomainError unless 0 < alpha < 1, beta = 1, mu = 0, delta >= 0.
  void validate() const;
  /// Laplace-transform scale: E[exp(-s X)] = exp(-gamma s^alpha).
  double laplace_scale() const;
};

struct InterfererModel {
  double intensity_inf = 0.0;     ///< active interferers per m^2
  double tx_power_moment = 1e-2;  ///< E[P^alpha], W^alpha
  channel::FadingParams fading;
};

StableLaw stable_scale(const InterfererModel& model, double sigma);

std::complex<double> stable_cf(const StableLaw& law, double omega);
/// stable_cf at omega = exp(v).
std::complex<double> stable_cf_log(const StableLaw& law, double v);

enum class StableMethod {
  automatic,  ///< tail series where gamma x^-alpha <= 1.5, Fourier inversion elsewhere
  series,
  fourier,
};

double stable_pdf(const StableLaw& law, double x, StableMethod method = StableMethod::automatic);
double stable_cdf(const StableLaw& law, double x, StableMethod method = StableMethod::automatic);

/// Density and cdf on an increasing positive grid, sharing one inverter.
TabulatedDistribution stable_table(const StableLaw& law, const std::vector<double>& grid,
                                   StableMethod method = StableMethod::automatic);

/// Kanter's representation; one-sided, positive.
double sample_stable(const StableLaw& law, Rng& rng);

struct AggregateOptions {
  /// Add the mean of the interferers beyond the window radius.
  bool far_field_correction = true;
};

/// Interferers are the points of `bs` retained with probability
/// intensity_inf / bs.intensity; distances are measured from the origin.
/// Each contributes P * H / R^sigma with P = E[P^alpha]^(1/alpha).
double mc_aggregate_interference(const geometry::PointPattern& bs, const InterfererModel& model, double sigma,
                                 Rng& rng, const AggregateOptions& options = {});

/// Mean of the thinned interferers outside radius `r`.
double far_field_mean(const InterfererModel& model, double sigma, double r);

}  // namespace pvtee::interference
