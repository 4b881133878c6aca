#include <cmath>
#include <sstream>

#include "doctest.h"
#include "pvtee/distribution.hpp"
#include "pvtee/error.hpp"

using namespace pvtee;

TEST_SUITE("distribution") {
  TEST_CASE("tabulated distribution queries") {
    TabulatedDistribution t;
    t.grid = {1.0, 2.0, 3.0};
    t.pdf = {0.1, 0.2, 0.1};
    t.cdf = {0.2, 0.6, 1.0};
    t.atom_at_zero = 0.1;
    t.validate();
    CHECK(t.cdf_at(-1.0) == 0.0);
    CHECK(t.cdf_at(0.5) == doctest::Approx(0.1));
    CHECK(t.cdf_at(1.5) == doctest::Approx(0.4));
    CHECK(t.cdf_at(9.0) == doctest::Approx(1.0));
    CHECK(t.quantile(0.8) == doctest::Approx(2.5));
    std::ostringstream os;
    t.write_cdf_csv(os, "power_watt");
    CHECK(os.str().rfind("power_watt,cdf\n", 0) == 0);
    t.cdf[1] = 0.1;
    CHECK_THROWS_AS(t.validate(), DomainError);
  }

  TEST_CASE("empirical distribution") {
    EmpiricalDistribution e({4.0, 1.0, 3.0, 2.0});
    CHECK(e.cdf(2.5) == doctest::Approx(0.5));
    CHECK(e.quantile(0.5) == doctest::Approx(2.5));
    CHECK(e.quantile(0.0) == 1.0);
    CHECK(e.quantile(1.0) == 4.0);
  }

  TEST_CASE("KS tools") {
    CHECK(ks_critical(10000) == doctest::Approx(0.016276).epsilon(1e-4));
    std::vector<double> u;
    for (int i = 1; i <= 1000; ++i) u.push_back((i - 0.5) / 1000.0);
    CHECK(ks_statistic(u, [](double x) { return x; }) == doctest::Approx(0.0005).epsilon(1e-9));
    CHECK(ks_statistic_window(u, [](double x) { return x; }, 0.1, 0.9) < 0.002);
  }

  TEST_CASE("empirical characteristic function") {
    const std::vector<double> xs = {0.0, 1.0};
    const EmpiricalCf e = empirical_cf(xs, M_PI);
    CHECK(e.value.real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(e.value.imag()) < 1e-15);
    // cos takes the values 1 and -1: unbiased variance 2, over n = 2.
    CHECK(e.se_re == doctest::Approx(1.0).epsilon(1e-12));
  }
}
