#include "pvtee/power_average.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pvtee/cf_inversion.hpp"
#include "pvtee/error.hpp"
#include "pvtee/simd/kernels.hpp"

namespace pvtee::average {

using std::numbers::pi;
using cplx = std::complex<double>;

namespace {

// log(exp(x) - 1) for x > 0
double log_expm1(double x) { return x > 40.0 ? x + std::log1p(-std::exp(-x)) : std::log(std::expm1(x)); }

// log(1 + exp(x))
double log1p_exp(double x) { return x > 35.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

// exp(z) - 1 without cancellation for small |z|
cplx expm1c(cplx z) {
  const double s = std::sin(0.5 * z.imag());
  return {std::expm1(z.real()) * std::cos(z.imag()) - 2.0 * s * s, std::exp(z.real()) * std::sin(z.imag())};
}

using Vec4 = std::array<double, 4>;

}  // namespace

double SirDemandLaw::z0() const { return std::expm1(traffic.rho_min / bandwidth); }

double tau_from_rate(double rho, double bandwidth) { return std::expm1(rho / bandwidth); }

double tau_pdf(double z, const SirDemandLaw& law) {
  if (!(z > law.z0())) return 0.0;
  // rho = B log(1 + z), d rho / dz = B / (1 + z)
  const double rho = law.bandwidth * std::log1p(z);
  return traffic::pareto_pdf(rho, law.traffic) * law.bandwidth / (1.0 + z);
}

double tau_cdf(double z, const SirDemandLaw& law) {
  if (!(z > law.z0())) return 0.0;
  return traffic::pareto_cdf(law.bandwidth * std::log1p(z), law.traffic);
}

double required_power_sample(double p_interference, double r0_sigma, double h0, double tau, int nt) {
  if (!(h0 > 0.0)) throw DomainError("direct-link gain must be positive");
  return p_interference * nt * r0_sigma * tau / h0;
}

PerMsPowerCf::PerMsPowerCf(const NetworkConfig& config, PerMsCfOptions options)
    : node_panel_sd_(options.node_panel), spec_(options.spec), memoize_(options.memoize) {
  config.validate();
  alpha_ = config.alpha();
  const double psi = pi * alpha_ / 2.0;
  cos_psi_ = std::cos(psi);
  sin_psi_ = std::sin(psi);
  theta_ = config.traffic.theta;
  rho_min_ = config.traffic.rho_min;
  bandwidth_ = config.bandwidth;
  const double delta = config.stable_law().delta;
  log_scale_ = delta > 0.0 ? std::log(delta) - std::log(cos_psi_) - std::log(pi * config.lambda_b) +
                                 alpha_ * std::log(static_cast<double>(config.fading.nt))
                           : -std::numeric_limits<double>::infinity();

  // Density of u = log H0 and the extent of its support.
  const channel::FadingParams& fp = config.fading;
  auto log_g = [&](double u) { return channel::kg_log_pdf(std::exp(u), fp) + u; };
  const double u0 = std::log(fp.multipath_shape() / fp.m * fp.omega);
  const double step = 0.05;
  double g_max = log_g(u0);
  double lo = u0, hi = u0;
  double m1 = 0.0, m2 = 0.0, m0 = 0.0;
  auto accumulate = [&](double u, double lg) {
    const double e = std::exp(lg);
    m0 += e;
    m1 += e * u;
    m2 += e * u * u;
  };
  accumulate(u0, g_max);
  for (;;) {
    lo -= step;
    const double lg = log_g(lo);
    g_max = std::max(g_max, lg);
    accumulate(lo, lg);
    if (lg < g_max - 48.0) break;
  }
  for (;;) {
    hi += step;
    const double lg = log_g(hi);
    g_max = std::max(g_max, lg);
    accumulate(hi, lg);
    if (lg < g_max - 48.0) break;
  }
  const double mean = m1 / m0;
  const double sd = std::sqrt(std::max(m2 / m0 - mean * mean, 1e-6));
  const double width = std::clamp(sd * node_panel_sd_, 0.02, 1.0);
  const int panels = static_cast<int>(std::ceil((hi - lo) / width));
  const GaussLegendreRule& gl = gauss_legendre(8);
  const double h = 0.5 * (hi - lo) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double c = lo + (2 * p + 1) * h;
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
      const double u = c + h * gl.nodes[k];
      const double weight = h * gl.weights[k] * std::exp(log_g(u));
      total += weight;
      log_a_.push_back(-alpha_ * u);
      w_.push_back(weight);
    }
  }
  mass_error_ = std::abs(total - 1.0);
  if (mass_error_ > 1e-6) throw ConvergenceError("K_G node weights do not integrate to one", total, mass_error_);
  a_.resize(w_.size());
  double cum = 0.0;
  la_lo_ = log_a_.back();
  la_hi_ = log_a_.front();
  bool lo_set = false;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    w_[i] /= total;
    a_[i] = std::exp(log_a_[i]);
  }
  // log a decreases along the nodes; take the 1e-12 and 1 - 1e-12 quantiles.
  for (std::size_t i = 0; i < w_.size(); ++i) {
    cum += w_[i];
    if (!lo_set && cum > 1e-12) {
      la_hi_ = log_a_[i];
      lo_set = true;
    }
    if (cum < 1.0 - 1e-12) la_lo_ = log_a_[i];
  }
}

PerMsPowerCf::Value PerMsPowerCf::at_log(double v) const {
  if (!memoize_) return compute(v);
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    const auto it = memo_.find(v);
    if (it != memo_.end()) return it->second;
  }
  const Value value = compute(v);
  std::lock_guard<std::mutex> lock(memo_mutex_);
  memo_.emplace(v, value);
  return value;
}

PerMsPowerCf::Value PerMsPowerCf::compute(double v) const {
  if (!std::isfinite(log_scale_)) return {1.0, 0.0};
  const double l0 = log_scale_ + alpha_ * v;
  const double c = cos_psi_, s = sin_psi_;
  const std::size_t n = a_.size();

  auto kernel = [&](double ell) -> Vec4 {
    const double r = std::exp(std::min(ell, 700.0));
    const simd::RationalSums k = simd::rational_sums(a_.data(), w_.data(), n, r, c, s);
    return {k.s0_re, k.s0_im, k.s1_re, k.s1_im};
  };
  auto ell_of_s = [&](double sv) { return l0 + alpha_ * log_expm1(rho_min_ * std::exp(sv) / bandwidth_); };
  auto rho_of_ell = [&](double ell) { return bandwidth_ * log1p_exp((ell - l0) / alpha_); };
  auto s_of_ell = [&](double ell) { return std::max(0.0, std::log(rho_of_ell(ell) / rho_min_)); };

  const double s_a = s_of_ell(-la_hi_ - 9.3);
  const double s_b = s_of_ell(-la_lo_ + 9.3);
  const double s_end = std::max(s_b + 1.0, 40.0 / theta_);

  auto in_s = [&](double sv) -> Vec4 {
    const double dens = theta_ * std::exp(-theta_ * sv);
    Vec4 k = kernel(ell_of_s(sv));
    for (double& x : k) x *= dens;
    return k;
  };
  auto in_ell = [&](double ell) -> Vec4 {
    const double rho = rho_of_ell(ell);
    const double sv = std::log(rho / rho_min_);
    const double ds = bandwidth_ * -std::expm1(-rho / bandwidth_) / (alpha_ * rho);
    const double dens = theta_ * std::exp(-theta_ * sv) * ds;
    Vec4 k = kernel(ell);
    for (double& x : k) x *= dens;
    return k;
  };

  Vec4 sum{};
  double err = 0.0;
  auto add = [&](const VectorQuadratureResult<4>& r) {
    for (int i = 0; i < 4; ++i) {
      sum[i] += r.value[i];
      if (!r.converged) err = std::max(err, r.error[i] / std::max(std::abs(r.value[i]), 1e-300));
    }
  };
  // Components far below the probability mass of a segment need no
  // relative accuracy.
  auto spec_for = [&](double s_lo, double s_hi) {
    QuadratureSpec q = spec_;
    q.abs_tol = std::max(spec_.abs_tol, 1e-16 * (std::exp(-theta_ * s_lo) - std::exp(-theta_ * s_hi)));
    return q;
  };
  if (s_a > 0.0) add(integrate_vector<4>(in_s, 0.0, s_a, spec_for(0.0, s_a)));
  if (s_b > s_a) add(integrate_vector<4>(in_ell, ell_of_s(s_a), ell_of_s(s_b), spec_for(s_a, s_b)));
  add(integrate_vector<4>(in_s, s_b, s_end, spec_for(s_b, s_end)));
  sum[2] += std::exp(-theta_ * s_end);
  if (err > 1e-6) throw ConvergenceError("per-MS power CF quadrature did not converge", sum[2], err);
  return {{sum[0], sum[1]}, {sum[2], sum[3]}};
}

cplx PerMsPowerCf::operator()(double omega) const {
  if (omega == 0.0) return 1.0;
  const cplx p = at_log(std::log(std::abs(omega))).phi;
  return omega > 0.0 ? p : std::conj(p);
}

CellPowerCf::CellPowerCf(const NetworkConfig& config)
    : CellPowerCf(std::make_shared<const PerMsPowerCf>(config), config.ms_per_bs()) {}

CellPowerCf::CellPowerCf(std::shared_ptr<const PerMsPowerCf> per_ms, double kappa)
    : per_ms_(std::move(per_ms)), kappa_(kappa), atom_(std::exp(-kappa)) {
  if (!per_ms_) throw DomainError("per-MS law is missing");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("mean population must be positive");
}

cplx CellPowerCf::at_log(double v) const {
  const PerMsPowerCf::Value s = per_ms_->at_log(v);
  if (std::abs(s.one_minus) <= 0.5) return std::exp(-kappa_ * s.one_minus);
  return atom_ + atom_ * expm1c(kappa_ * s.phi);
}

cplx CellPowerCf::continuous_at_log(double v) const {
  const PerMsPowerCf::Value s = per_ms_->at_log(v);
  const double scale = 1.0 / -std::expm1(-kappa_);
  if (std::abs(s.one_minus) <= 0.5) return (std::exp(-kappa_ * s.one_minus) - atom_) * scale;
  return atom_ * expm1c(kappa_ * s.phi) * scale;
}

cplx CellPowerCf::operator()(double omega) const {
  if (omega == 0.0) return 1.0;
  const cplx p = at_log(std::log(std::abs(omega)));
  return omega > 0.0 ? p : std::conj(p);
}

cplx cf_per_ms_power(double omega, const NetworkConfig& config) { return PerMsPowerCf(config)(omega); }

cplx cf_cell_power(double omega, const NetworkConfig& config) { return CellPowerCf(config)(omega); }

std::vector<double> default_power_grid(double p_max, int points) {
  if (points < 2) throw DomainError("power grid needs at least two points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double lo = std::log(p_max * 1e-4), hi = std::log(p_max * 25.0);
  for (int i = 0; i < points; ++i) grid[i] = std::exp(lo + (hi - lo) * i / (points - 1));
  return grid;
}

struct CellPowerLaw::Impl {
  std::shared_ptr<CellPowerCf> cf;
  std::unique_ptr<FourierInverter> inverter;
};

CellPowerLaw::CellPowerLaw(const NetworkConfig& config, double x_min, double x_max)
    : CellPowerLaw(std::make_shared<const PerMsPowerCf>(config), config.ms_per_bs(), x_min, x_max) {}

CellPowerLaw::CellPowerLaw(std::shared_ptr<const PerMsPowerCf> per_ms, double kappa, double x_min, double x_max)
    : impl_(std::make_unique<Impl>()), atom_(std::exp(-kappa)), x_min_(x_min) {
  impl_->cf = std::make_shared<CellPowerCf>(std::move(per_ms), kappa);
  FourierInverter::Options opt;
  opt.x_min = x_min;
  opt.x_max = x_max;
  opt.table_step = 0.01;
  auto cf = impl_->cf;
  impl_->inverter = std::make_unique<FourierInverter>([cf](double v) { return cf->continuous_at_log(v); }, opt);
}

CellPowerLaw::~CellPowerLaw() = default;
CellPowerLaw::CellPowerLaw(CellPowerLaw&&) noexcept = default;

double CellPowerLaw::cdf(double x) const {
  if (x < 0.0) return 0.0;
  if (x == 0.0) return atom_;
  const double cont = std::clamp(impl_->inverter->cdf(x), 0.0, 1.0);
  return atom_ + (1.0 - atom_) * cont;
}

double CellPowerLaw::pdf(double x) const {
  if (!(x > 0.0)) return 0.0;
  return (1.0 - atom_) * std::max(impl_->inverter->pdf(x), 0.0);
}

TabulatedDistribution CellPowerLaw::tabulate(const std::vector<double>& grid) const {
  TabulatedDistribution tab;
  tab.grid = grid;
  tab.atom_at_zero = atom_;
  tab.pdf.resize(grid.size());
  tab.cdf.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    tab.pdf[i] = pdf(grid[i]);
    tab.cdf[i] = cdf(grid[i]);
  }
  return tab;
}

double CellPowerLaw::truncated_mean(double cap) const {
  // Geometric panels from x_min up to cap, 16-point Gauss-Legendre on each.
  const GaussLegendreRule& gl = gauss_legendre(16);
  double integral = 0.0;
  double hi = cap;
  while (hi > x_min_ * (1.0 + 1e-12)) {
    const double lo = std::max(hi / 10.0, x_min_);
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
      integral += h * gl.weights[k] * std::clamp(impl_->inverter->cdf(c + h * gl.nodes[k]), 0.0, 1.0);
    }
    hi = lo;
  }
  const double cont_at_cap = std::clamp(impl_->inverter->cdf(cap), 0.0, 1.0);
  return std::max((1.0 - atom_) * (cap * cont_at_cap - integral), 0.0);
}

TabulatedDistribution invert_cell_power(const NetworkConfig& config, const std::vector<double>& grid) {
  if (grid.empty() || !(grid.front() > 0.0)) throw DomainError("inversion grid must be nonempty and positive");
  CellPowerLaw law(config, grid.front(), grid.back());
  return law.tabulate(grid);
}

energy::EnergyReport ee_average(const NetworkConfig& config) {
  return ee_average(config, std::make_shared<const PerMsPowerCf>(config));
}

energy::EnergyReport ee_average(const NetworkConfig& config, std::shared_ptr<const PerMsPowerCf> per_ms) {
  config.validate();
  const double cap = config.power.p_max;
  CellPowerLaw law(std::move(per_ms), config.ms_per_bs(), cap * 1e-8, cap);
  const double f = law.cdf(cap);
  const double mean_real = law.truncated_mean(cap);
  const double traffic = traffic::mean_cell_traffic(config.traffic, config.lambda_m, config.lambda_b);
  energy::EnergyReport r =
      energy::assemble_ee(traffic, f, mean_real, config.fading.nt, config.power, config.exponent_average);
  r.scheme = energy::Scheme::average;
  r.bandwidth = config.bandwidth;
  return r;
}

}  // namespace pvtee::average
