#include "pvtee/channel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "pvtee/error.hpp"
#include "pvtee/specfun.hpp"

namespace pvtee::channel {

namespace {

constexpr double kDbScale = 8.686;

}  // namespace

ShadowingParams shadowing_params(double sigma_db) {
  if (!(sigma_db > 0.0)) throw DomainError("shadowing spread sigma_db must be positive");
  const double s = sigma_db / kDbScale;
  const double e = std::expm1(s * s);
  const double lambda = 1.0 / (e * e);
  return {lambda, std::sqrt((lambda + 1.0) / lambda)};
}

FadingParams FadingParams::make(double m, double sigma_db, int nt, int nr) {
  FadingParams p;
  p.m = m;
  p.sigma_db = sigma_db;
  p.nt = nt;
  p.nr = nr;
  const ShadowingParams s = shadowing_params(sigma_db);
  p.lambda_shape = s.lambda_shape;
  p.omega = s.omega;
  p.validate();
  return p;
}

void FadingParams::validate() const {
  if (!(m >= 0.5)) throw DomainError("Nakagami m must be at least 0.5");
  if (!(sigma_db > 0.0)) throw DomainError("shadowing spread sigma_db must be positive");
  if (nt < 1 || nr < 1) throw DomainError("antenna counts must be at least 1");
  const ShadowingParams s = shadowing_params(sigma_db);
  if (std::abs(s.lambda_shape - lambda_shape) > 1e-12 * s.lambda_shape ||
      std::abs(s.omega - omega) > 1e-12 * s.omega) {
    throw DomainError("shadowing shape and scale do not match sigma_db");
  }
}

double kg_log_pdf(double y, const FadingParams& p) {
  if (!(y > 0.0)) throw DomainError("K_G density requires y > 0");
  const double k = p.multipath_shape();
  const double lam = p.lambda_shape;
  const double c = p.rate();
  return std::log(2.0) + 0.5 * (k + lam) * std::log(c) - specfun::log_gamma(k) - specfun::log_gamma(lam) +
         0.5 * (k + lam - 2.0) * std::log(y) + specfun::log_bessel_k(lam - k, 2.0 * std::sqrt(c * y));
}

double kg_pdf(double y, const FadingParams& p) { return std::exp(kg_log_pdf(y, p)); }

double kg_fractional_moment(double alpha, const FadingParams& p) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("fractional moment order must lie in (0, 1)");
  const double k = p.multipath_shape();
  const double lam = p.lambda_shape;
  return std::exp(-alpha * std::log(p.rate()) + specfun::log_gamma(lam + alpha) + specfun::log_gamma(k + alpha) -
                  specfun::log_gamma(k) - specfun::log_gamma(lam));
}

double sample_shadowing(const FadingParams& p, Rng& rng) {
  return p.omega * rng.gamma(p.lambda_shape) / p.lambda_shape;
}

double sample_H(const FadingParams& p, Rng& rng) {
  const double w = sample_shadowing(p, rng);
  // The nt*nr i.i.d. Gamma(m, 1/m) powers sum to Gamma(nt nr m, 1/m).
  return w * rng.gamma(p.multipath_shape()) / p.m;
}

DirectLink sample_direct_link(const FadingParams& p, double r0, double sigma, Rng& rng) {
  if (!(r0 > 0.0)) throw DomainError("link distance must be positive");
  DirectLink out;
  out.shadowing = sample_shadowing(p, rng);
  const double scale = out.shadowing * std::pow(r0, -sigma);
  const double amp = std::sqrt(scale);

  Eigen::MatrixXcd h(p.nr, p.nt);
  double frob = 0.0;
  for (int j = 0; j < p.nt; ++j) {
    for (int i = 0; i < p.nr; ++i) {
      const double power = rng.gamma(p.m) / p.m;
      const double phase = 2.0 * std::numbers::pi * rng.uniform();
      h(i, j) = std::polar(amp * std::sqrt(power), phase);
      frob += power;
    }
  }
  out.frobenius_sq = scale * frob;

  const Eigen::MatrixXcd gram = p.nt <= p.nr ? Eigen::MatrixXcd(h.adjoint() * h) : Eigen::MatrixXcd(h * h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  out.eigenvalues.resize(static_cast<std::size_t>(ev.size()));
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    out.eigenvalues[static_cast<std::size_t>(i)] = std::max(ev(ev.size() - 1 - i), 0.0);
  }
  return out;
}

std::vector<double> sample_direct_eigenvalues(const FadingParams& p, double r0, double sigma, Rng& rng) {
  return sample_direct_link(p, r0, sigma, rng).eigenvalues;
}

}  // namespace pvtee::channel
