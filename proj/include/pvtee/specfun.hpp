#pragma once

// Special functions used by the channel and interference models.

namespace pvtee::specfun {

/// Gamma function for x > 0. Throws DomainError for x <= 0 and
/// std::overflow_error when the result is not representable.
double gamma_fn(double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// Modified Bessel function of the second kind K_nu(x), x > 0, any real nu.
/// Underflows to zero for large x; use bessel_k_scaled or log_bessel_k there.
double bessel_k(double order, double x);

/// exp(x) * K_nu(x). Finite wherever K_nu(x) would underflow.
double bessel_k_scaled(double order, double x);

/// log K_nu(x). Never overflows or underflows for x > 0.
double log_bessel_k(double order, double x);

}  // namespace pvtee::specfun
