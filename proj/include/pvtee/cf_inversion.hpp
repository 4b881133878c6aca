#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "pvtee/quadrature.hpp"

namespace pvtee {

/// Characteristic function evaluated at omega = exp(v), v real. Working in
/// log-frequency keeps laws with logarithmically slow decay near the origin
/// representable.
using LogCf = std::function<std::complex<double>(double v)>;

/// Complex values of a LogCf on a uniform v grid, read back by local cubic
/// interpolation.
class TabulatedCf {
 public:
  TabulatedCf(const LogCf& cf, double v_lo, double v_hi, double step);

  std::complex<double> operator()(double v) const;
  double v_lo() const { return v_lo_; }
  double v_hi() const { return v_lo_ + step_ * static_cast<double>(values_.size() - 1); }
  std::size_t size() const { return values_.size(); }

 private:
  double v_lo_;
  double step_;
  std::vector<std::complex<double>> values_;
};

/// Inverts a characteristic function of a law on [0, inf) (no atoms) to its
/// cdf (Gil-Pelaez) and pdf (real-integral form) at points in [x_min, x_max].
///
/// The frequency axis is split in three: below omega_a = low_cut / x_max the
/// kernel is expanded to first order in omega x and integrated once in v;
/// the middle part uses Gauss-Legendre panels, logarithmic at first and then
/// a quarter period wide; beyond tail_cycles / x two terms of integration by
/// parts close the integral.
class FourierInverter {
 public:
  struct Options {
    double x_min = 0.0;
    double x_max = 0.0;
    double low_cut = 1e-3;
    double log_panel = 0.05;
    double tail_cycles = 200.0;
    int panel_order = 8;
    /// Evaluate the CF through a TabulatedCf with this v-step (0 = direct).
    double table_step = 0.0;
    QuadratureSpec low_spec{1e-11, 1e-14, 4000};
  };

  FourierInverter(LogCf cf, Options options);

  double cdf(double x) const;
  double pdf(double x) const;

  /// Achieved error estimate of the low-frequency integrals.
  double low_error() const { return low_error_; }

 private:
  std::complex<double> phi(double v) const;
  std::complex<double> dphi_dv(double v) const;
  void middle_nodes(double x, std::vector<double>& omega, std::vector<double>& weight) const;

  LogCf cf_;
  Options opt_;
  double v_a_;
  double j0_ = 0.0, j1_ = 0.0, j2_ = 0.0;
  double low_error_ = 0.0;
  std::vector<TabulatedCf> table_;
};

}  // namespace pvtee
