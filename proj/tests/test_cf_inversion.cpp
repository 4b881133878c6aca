#include <cmath>
#include <complex>

#include <boost/math/special_functions/gamma.hpp>

#include "doctest.h"
#include "pvtee/cf_inversion.hpp"
#include "pvtee/error.hpp"

using namespace pvtee;
using cplx = std::complex<double>;

namespace {

// Gamma(k, 1) characteristic function at omega = e^v.
LogCf gamma_cf(double k) {
  return [k](double v) { return std::pow(cplx(1.0, -std::exp(v)), -k); };
}

}  // namespace

TEST_SUITE("cf_inversion") {
  TEST_CASE("gamma law cdf and pdf") {
    for (double k : {0.7, 2.5, 30.0}) {
      FourierInverter::Options o;
      o.x_min = 1e-3 * k;
      o.x_max = 10.0 * k;
      FourierInverter inv(gamma_cf(k), o);
      for (double x : {0.01 * k, 0.3 * k, k, 2.0 * k, 5.0 * k}) {
        CHECK(inv.cdf(x) == doctest::Approx(boost::math::gamma_p(k, x)).epsilon(1e-7));
        const double pdf = std::exp((k - 1.0) * std::log(x) - x - boost::math::lgamma(k));
        CHECK(inv.pdf(x) == doctest::Approx(pdf).epsilon(1e-6));
      }
    }
  }

  TEST_CASE("tabulated characteristic function") {
    const double k = 4.0;
    FourierInverter::Options o;
    o.x_min = 0.05;
    o.x_max = 40.0;
    o.table_step = 0.01;
    FourierInverter inv(gamma_cf(k), o);
    for (double x : {0.5, 4.0, 12.0}) {
      CHECK(inv.cdf(x) == doctest::Approx(boost::math::gamma_p(k, x)).epsilon(1e-6));
    }
    TabulatedCf t(gamma_cf(k), -3.0, 3.0, 0.01);
    const double v = 0.123;
    CHECK(std::abs(t(v) - gamma_cf(k)(v)) < 1e-8);
  }

  TEST_CASE("invalid options") {
    FourierInverter::Options o;
    o.x_min = 0.0;
    o.x_max = 1.0;
    CHECK_THROWS_AS(FourierInverter(gamma_cf(1.0), o), DomainError);
    CHECK_THROWS_AS(TabulatedCf(gamma_cf(1.0), 1.0, 0.0, 0.1), DomainError);
  }
}
