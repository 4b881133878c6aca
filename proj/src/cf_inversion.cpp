#include "pvtee/cf_inversion.hpp"

#include <cmath>
#include <numbers>

#include "pvtee/error.hpp"
#include "pvtee/simd/kernels.hpp"

namespace pvtee {

using std::numbers::pi;
using cplx = std::complex<double>;

TabulatedCf::TabulatedCf(const LogCf& cf, double v_lo, double v_hi, double step) : v_lo_(v_lo), step_(step) {
  if (!(step > 0.0) || !(v_hi > v_lo)) throw DomainError("tabulated CF needs v_hi > v_lo and a positive step");
  const std::size_t n = static_cast<std::size_t>(std::ceil((v_hi - v_lo) / step)) + 1;
  values_.resize(n);
  for (std::size_t i = 0; i < n; ++i) values_[i] = cf(v_lo + step * static_cast<double>(i));
}

cplx TabulatedCf::operator()(double v) const {
  const double u = (v - v_lo_) / step_;
  const std::size_t last = values_.size() - 1;
  if (u <= 0.0) return values_.front();
  if (u >= static_cast<double>(last)) return values_.back();
  std::size_t i = static_cast<std::size_t>(u);
  i = std::min(std::max<std::size_t>(i, 1), last >= 3 ? last - 2 : 0);
  const double t = u - static_cast<double>(i);
  // Lagrange cubic through nodes i-1, i, i+1, i+2.
  const double w0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
  const double w1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  const double w2 = -(t + 1.0) * t * (t - 2.0) / 2.0;
  const double w3 = (t + 1.0) * t * (t - 1.0) / 6.0;
  return w0 * values_[i - 1] + w1 * values_[i] + w2 * values_[i + 1] + w3 * values_[i + 2];
}

FourierInverter::FourierInverter(LogCf cf, Options options) : cf_(std::move(cf)), opt_(options) {
  if (!(opt_.x_min > 0.0) || !(opt_.x_max >= opt_.x_min)) throw DomainError("inversion range must satisfy 0 < x_min <= x_max");
  if (!(opt_.low_cut > 0.0) || !(opt_.log_panel > 0.0) || !(opt_.tail_cycles > 1.0) || opt_.panel_order < 2) {
    throw DomainError("invalid inversion options");
  }
  v_a_ = std::log(opt_.low_cut / opt_.x_max);

  if (opt_.table_step > 0.0) {
    const double v_hi = std::log(opt_.tail_cycles / opt_.x_min) + 0.1;
    table_.emplace_back(cf_, v_a_ - 0.1, v_hi, opt_.table_step);
  }

  // J0 = int Im phi dv, J1 = int Re phi e^v dv, J2 = int Im phi e^{2v} dv
  // over v < v_a, written as v = v_a - y with y on [0, inf).
  auto integrand = [&](double t) -> std::array<double, 3> {
    if (t >= 1.0) return {0.0, 0.0, 0.0};
    const double one_minus = 1.0 - t;
    const double y = t / one_minus;
    const double jac = 1.0 / (one_minus * one_minus);
    const double v = v_a_ - y;
    const cplx p = cf_(v);
    const double e1 = std::exp(v);
    return {p.imag() * jac, p.real() * e1 * jac, p.imag() * e1 * e1 * jac};
  };
  const auto r = integrate_vector<3>(integrand, 0.0, 1.0, opt_.low_spec);
  j0_ = r.value[0];
  j1_ = r.value[1];
  j2_ = r.value[2];
  low_error_ = r.error[0] + opt_.x_max * r.error[1];
  if (!r.converged && low_error_ > 1e-8) {
    throw ConvergenceError("low-frequency inversion integral did not converge", r.value[0], low_error_);
  }
}

cplx FourierInverter::phi(double v) const { return table_.empty() ? cf_(v) : table_.front()(v); }

cplx FourierInverter::dphi_dv(double v) const {
  const double h = 1e-3;
  return (phi(v + h) - phi(v - h)) / (2.0 * h);
}

void FourierInverter::middle_nodes(double x, std::vector<double>& omega, std::vector<double>& weight) const {
  omega.clear();
  weight.clear();
  const GaussLegendreRule& gl = gauss_legendre(opt_.panel_order);
  const double quarter = 0.5 * pi / x;
  const double omega_end = opt_.tail_cycles / x;
  const double ratio = std::exp(opt_.log_panel);
  double lo = std::exp(v_a_);
  while (lo < omega_end) {
    double hi = std::min(lo * ratio, lo + quarter);
    if (hi > omega_end) hi = omega_end;
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
      omega.push_back(c + h * gl.nodes[k]);
      weight.push_back(h * gl.weights[k]);
    }
    lo = hi;
  }
}

double FourierInverter::cdf(double x) const {
  if (!(x > 0.0)) return 0.0;
  std::vector<double> omega, weight;
  middle_nodes(x, omega, weight);
  std::vector<double> wc(omega.size()), ws(omega.size());
  for (std::size_t k = 0; k < omega.size(); ++k) {
    const cplx p = phi(std::log(omega[k]));
    wc[k] = weight[k] * p.imag() / omega[k];
    ws[k] = -weight[k] * p.real() / omega[k];
  }
  const simd::TrigSums mid = simd::trig_sums(omega.data(), wc.data(), ws.data(), omega.size(), x);

  // Tail of int h(w) e^{-jwx} dw with h = phi / w.
  const double big = opt_.tail_cycles / x;
  const double vb = std::log(big);
  const cplx p = phi(vb);
  const cplx h = p / big;
  const cplx dh = (dphi_dv(vb) - p) / (big * big);
  const cplx jx(0.0, x);
  const cplx tail = std::exp(cplx(0.0, -big * x)) * (h / jx + dh / (jx * jx));

  const double low = j0_ - x * j1_;
  return 0.5 - (low + mid.cos_sum + mid.sin_sum + tail.imag()) / pi;
}

double FourierInverter::pdf(double x) const {
  if (!(x > 0.0)) return 0.0;
  std::vector<double> omega, weight;
  middle_nodes(x, omega, weight);
  std::vector<double> wc(omega.size()), ws(omega.size());
  for (std::size_t k = 0; k < omega.size(); ++k) {
    const cplx p = phi(std::log(omega[k]));
    wc[k] = weight[k] * p.real();
    ws[k] = weight[k] * p.imag();
  }
  const simd::TrigSums mid = simd::trig_sums(omega.data(), wc.data(), ws.data(), omega.size(), x);

  const double big = opt_.tail_cycles / x;
  const double vb = std::log(big);
  const cplx p = phi(vb);
  const cplx dp = dphi_dv(vb) / big;
  const cplx jx(0.0, x);
  const cplx tail = std::exp(cplx(0.0, -big * x)) * (p / jx + dp / (jx * jx));

  const double low = j1_ + x * j2_;
  return (low + mid.cos_sum + mid.sin_sum + tail.real()) / pi;
}

}  // namespace pvtee
