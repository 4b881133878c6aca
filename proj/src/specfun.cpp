#include "pvtee/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pvtee/error.hpp"

namespace pvtee::specfun {

namespace {

constexpr double kEps = 1e-16;

// Taylor coefficients of 1/Gamma(1+z) about z = 0.
constexpr std::array<double, 28> kRecipGammaTaylor = {
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
    1.4123806553180317816e-18,
};

// For |mu| <= 1/2:
//   gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)
//   gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
// plus the two reciprocals themselves.
struct TemmeGammas {
  double gam1, gam2, recip_plus, recip_minus;
};

TemmeGammas temme_gammas(double mu) {
  double even = 0.0, odd = 0.0;
  double power = 1.0;  // mu^k
  for (std::size_t k = 0; k < kRecipGammaTaylor.size(); ++k) {
    if (k % 2 == 0) {
      even += kRecipGammaTaylor[k] * power;
    } else {
      // odd part divided by mu, accumulated as mu^(k-1)
      odd += kRecipGammaTaylor[k] * (power / (mu == 0.0 ? 1.0 : mu));
    }
    power *= mu;
  }
  if (mu == 0.0) odd = kRecipGammaTaylor[1];
  // 1/Gamma(1+mu) = even + mu*odd, 1/Gamma(1-mu) = even - mu*odd
  return {-odd, even, even + mu * odd, even - mu * odd};
}

// K_mu(x) and K_{mu+1}(x) for |mu| <= 1/2, x <= 2 (Temme's series).
void temme_series(double mu, double x, double& k_mu, double& k_mu1) {
  const double half_x = 0.5 * x;
  const double pimu = std::numbers::pi * mu;
  const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
  double d = -std::log(half_x);
  double e = mu * d;
  const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
  const TemmeGammas g = temme_gammas(mu);
  double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
  double sum = ff;
  e = std::exp(e);
  double p = 0.5 * e / g.recip_plus;    // 0.5 (x/2)^-mu Gamma(1+mu)
  double q = 0.5 / (e * g.recip_minus); // 0.5 (x/2)^mu Gamma(1-mu)
  double c = 1.0;
  d = half_x * half_x;
  double sum1 = p;
  for (int i = 1; i < 500; ++i) {
    const double di = i;
    ff = (di * ff + p + q) / (di * di - mu * mu);
    c *= d / di;
    p /= di - mu;
    q /= di + mu;
    const double del = c * ff;
    sum += del;
    const double del1 = c * (p - di * ff);
    sum1 += del1;
    if (std::abs(del) < std::abs(sum) * kEps) break;
  }
  k_mu = sum;
  k_mu1 = sum1 * (2.0 / x);
}

// exp(x) K_mu(x) and exp(x) K_{mu+1}(x) for |mu| <= 1/2, x > 2 (Steed's
// continued fraction CF2 with Temme's normalization).
void steed_scaled(double mu, double x, double& k_mu, double& k_mu1) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25 - mu * mu;
  double q = a1, c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i < 100000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h = a1 * h;
  k_mu = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
  k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
}

// Shared driver. Returns mantissa and log-scale such that
// K_nu(x) * (scaled ? e^x : 1) = mantissa * exp(log_scale).
void bessel_k_core(double order, double x, bool scaled, double& mantissa, double& log_scale) {
  if (!(x > 0.0)) throw DomainError("bessel_k: argument must be positive, got " + std::to_string(x));
  if (!std::isfinite(order)) throw DomainError("bessel_k: order must be finite");
  const double nu = std::abs(order);  // K_{-nu} = K_nu
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  double k_mu, k_mu1;
  log_scale = 0.0;
  if (x <= 2.0) {
    temme_series(mu, x, k_mu, k_mu1);
    if (scaled) log_scale = x;
  } else {
    steed_scaled(mu, x, k_mu, k_mu1);
    if (!scaled) log_scale = -x;
  }
  // Upward recurrence K_{m+1} = (2m/x) K_m + K_{m-1} is stable for K.
  const double two_over_x = 2.0 / x;
  constexpr double kRescale = 1e250;
  for (int i = 1; i <= nl; ++i) {
    const double grow = (mu + i) * two_over_x;
    // Rescale before the step; for tiny x a single step can exceed the range.
    if (std::abs(k_mu1) * grow > kRescale) {
      const double f = std::abs(k_mu1);
      k_mu /= f;
      k_mu1 /= f;
      log_scale += std::log(f);
    }
    const double next = grow * k_mu1 + k_mu;
    k_mu = k_mu1;
    k_mu1 = next;
  }
  mantissa = k_mu;
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_fn: argument must be positive, got " + std::to_string(x));
  const double g = std::tgamma(x);
  if (!std::isfinite(g)) throw std::overflow_error("gamma_fn: result overflows for x = " + std::to_string(x));
  return g;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));
  return std::lgamma(x);
}

double bessel_k(double order, double x) {
  double m, s;
  bessel_k_core(order, x, false, m, s);
  return m * std::exp(s);
}

double bessel_k_scaled(double order, double x) {
  double m, s;
  bessel_k_core(order, x, true, m, s);
  return m * std::exp(s);
}

double log_bessel_k(double order, double x) {
  double m, s;
  bessel_k_core(order, x, false, m, s);
  return std::log(m) + s;
}

}  // namespace pvtee::specfun
