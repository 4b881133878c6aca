#include "pvtee/interference.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "pvtee/cf_inversion.hpp"
#include "pvtee/error.hpp"
#include "pvtee/specfun.hpp"

namespace pvtee::interference {

using std::numbers::pi;
using cplx = std::complex<double>;

namespace {

constexpr double kSeriesLimit = 1.5;

double series_u(const StableLaw& law, double x) { return law.laplace_scale() * std::pow(x, -law.alpha); }

// sum_k (-1)^{k+1} u^k Gamma(alpha k + shift) / k! sin(pi alpha k)
double tail_series(double u, double alpha, double shift) {
  double sum = 0.0;
  double log_u = std::log(u);
  for (int k = 1; k < 400; ++k) {
    const double ak = alpha * k;
    const double mag = std::exp(k * log_u + specfun::log_gamma(ak + shift) - specfun::log_gamma(k + 1.0));
    const double term = (k % 2 == 1 ? 1.0 : -1.0) * mag * std::sin(pi * ak);
    sum += term;
    if (mag < 1e-18 * std::abs(sum) && k > 4) break;
  }
  return sum;
}

double series_pdf(const StableLaw& law, double x) {
  return tail_series(series_u(law, x), law.alpha, 1.0) / (pi * x);
}

double series_ccdf(const StableLaw& law, double x) { return tail_series(series_u(law, x), law.alpha, 0.0) / pi; }

bool use_series(const StableLaw& law, double x, StableMethod method) {
  if (method == StableMethod::series) return true;
  if (method == StableMethod::fourier) return false;
  return series_u(law, x) <= kSeriesLimit;
}

std::unique_ptr<FourierInverter> make_inverter(const StableLaw& law, double x_min, double x_max) {
  FourierInverter::Options opt;
  opt.x_min = x_min;
  opt.x_max = x_max;
  opt.tail_cycles = 2000.0;
  return std::make_unique<FourierInverter>([law](double v) { return stable_cf_log(law, v); }, opt);
}

void require_positive_scale(const StableLaw& law) {
  law.validate();
  if (!(law.delta > 0.0)) throw DomainError("stable density needs a positive scale delta");
}

}  // namespace

void StableLaw::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("stable index alpha must lie in (0, 1)");
  if (beta != 1.0) throw DomainError("only totally skewed laws (beta = 1) are supported");
  if (mu != 0.0) throw DomainError("only zero-location laws are supported");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw DomainError("stable scale delta must be finite and non-negative");
}

double StableLaw::laplace_scale() const { return delta / std::cos(pi * alpha / 2.0); }

StableLaw stable_scale(const InterfererModel& model, double sigma) {
  if (!(sigma > 2.0)) throw DomainError("sigma must exceed 2");
  if (!(model.intensity_inf >= 0.0)) throw DomainError("interferer intensity must be non-negative");
  if (!(model.tx_power_moment > 0.0)) throw DomainError("transmit power moment must be positive");
  const double a = 2.0 / sigma;
  StableLaw law;
  law.alpha = a;
  law.delta = model.intensity_inf * pi * specfun::gamma_fn(2.0 - a) * std::cos(pi * a / 2.0) / (1.0 - a) *
              model.tx_power_moment * channel::kg_fractional_moment(a, model.fading);
  return law;
}

cplx stable_cf(const StableLaw& law, double omega) {
  if (omega == 0.0) return 1.0;
  const double w = std::abs(omega);
  const double sgn = omega > 0.0 ? 1.0 : -1.0;
  const double m = law.delta * std::pow(w, law.alpha);
  return std::exp(cplx(-m, m * law.beta * sgn * std::tan(pi * law.alpha / 2.0)));
}

cplx stable_cf_log(const StableLaw& law, double v) {
  const double m = law.delta * std::exp(law.alpha * v);
  return std::exp(cplx(-m, m * law.beta * std::tan(pi * law.alpha / 2.0)));
}

double stable_pdf(const StableLaw& law, double x, StableMethod method) {
  require_positive_scale(law);
  if (!(x > 0.0)) return 0.0;
  if (use_series(law, x, method)) return std::max(series_pdf(law, x), 0.0);
  return std::max(make_inverter(law, x, x)->pdf(x), 0.0);
}

double stable_cdf(const StableLaw& law, double x, StableMethod method) {
  require_positive_scale(law);
  if (!(x > 0.0)) return 0.0;
  if (use_series(law, x, method)) return std::clamp(1.0 - series_ccdf(law, x), 0.0, 1.0);
  return std::clamp(make_inverter(law, x, x)->cdf(x), 0.0, 1.0);
}

TabulatedDistribution stable_table(const StableLaw& law, const std::vector<double>& grid, StableMethod method) {
  require_positive_scale(law);
  TabulatedDistribution tab;
  tab.grid = grid;
  tab.pdf.resize(grid.size());
  tab.cdf.resize(grid.size());
  std::unique_ptr<FourierInverter> inv;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    if (!(x > 0.0)) throw DomainError("stable table grid must be positive");
    if (i > 0 && !(x > grid[i - 1])) throw DomainError("stable table grid must be increasing");
    if (use_series(law, x, method)) {
      tab.pdf[i] = std::max(series_pdf(law, x), 0.0);
      tab.cdf[i] = std::clamp(1.0 - series_ccdf(law, x), 0.0, 1.0);
      continue;
    }
    if (!inv) inv = make_inverter(law, grid.front(), grid.back());
    tab.pdf[i] = std::max(inv->pdf(x), 0.0);
    tab.cdf[i] = std::clamp(inv->cdf(x), 0.0, 1.0);
  }
  return tab;
}

double sample_stable(const StableLaw& law, Rng& rng) {
  law.validate();
  if (law.delta == 0.0) return 0.0;
  const double a = law.alpha;
  const double u = pi * rng.uniform();
  const double e = rng.exponential();
  const double kanter = std::pow(std::sin(a * u) / std::sin(u), 1.0 / (1.0 - a)) * std::sin((1.0 - a) * u) / std::sin(a * u);
  return std::pow(law.laplace_scale(), 1.0 / a) * std::pow(kanter / e, (1.0 - a) / a);
}

double far_field_mean(const InterfererModel& model, double sigma, double r) {
  if (!(sigma > 2.0)) throw DomainError("sigma must exceed 2");
  const double a = 2.0 / sigma;
  const double power = std::pow(model.tx_power_moment, 1.0 / a);
  const double mean_h = model.fading.multipath_shape() / model.fading.m * model.fading.omega;
  return 2.0 * pi * model.intensity_inf * power * mean_h * std::pow(r, 2.0 - sigma) / (sigma - 2.0);
}

double mc_aggregate_interference(const geometry::PointPattern& bs, const InterfererModel& model, double sigma,
                                 Rng& rng, const AggregateOptions& options) {
  if (!(sigma > 2.0)) throw DomainError("sigma must exceed 2");
  if (!(bs.intensity > 0.0)) throw DomainError("BS pattern intensity must be positive");
  const double keep = model.intensity_inf / bs.intensity;
  if (!(keep >= 0.0 && keep <= 1.0)) throw DomainError("interferer intensity must lie in [0, lambda_b]");
  const double power = std::pow(model.tx_power_moment, sigma / 2.0);
  double total = 0.0;
  for (const geometry::Point& p : bs.points) {
    if (rng.uniform() >= keep) continue;
    const double r2 = p.x * p.x + p.y * p.y;
    total += power * channel::sample_H(model.fading, rng) * std::pow(r2, -sigma / 2.0);
  }
  if (options.far_field_correction && bs.window.radius > 0.0) {
    total += far_field_mean(model, sigma, bs.window.radius);
  }
  return total;
}

}  // namespace pvtee::interference
