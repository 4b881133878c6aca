#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "pvtee/cell_sampler.hpp"
#include "pvtee/distribution.hpp"
#include "pvtee/error.hpp"
#include "pvtee/power_average.hpp"
#include "pvtee/quadrature.hpp"

using namespace pvtee;
using namespace pvtee::average;
using cplx = std::complex<double>;

TEST_SUITE("power_average") {
  TEST_CASE("SIR demand law") {
    const SirDemandLaw law{traffic::TrafficLaw::from_bits(1.8, 2.5), 1.0};
    CHECK(law.z0() == doctest::Approx(std::pow(2.0, 2.5) - 1.0));
    for (double z : {10.0, 1e3, 1e6}) {
      const auto r = integrate([&](double t) { return tau_pdf(t, law); }, law.z0(), z, {1e-11, 1e-15, 4000});
      CHECK(r.value == doctest::Approx(tau_cdf(z, law)).epsilon(1e-8));
    }
    CHECK(tau_cdf(10.0, law) == doctest::Approx(traffic::pareto_cdf(std::log(11.0), law.traffic)));
    CHECK(required_power_sample(2.0, 3.0, 4.0, 5.0, 8) == doctest::Approx(2.0 * 8 * 3.0 * 5.0 / 4.0));
  }

  TEST_CASE("per-MS characteristic function against sampled powers") {
    const NetworkConfig cfg = NetworkConfig::defaults();
    const PerMsPowerCf cf(cfg);
    CHECK(cf.node_mass_error() < 1e-6);
    CHECK(cf(0.0) == cplx(1.0, 0.0));
    const cells::MsSampler sampler(cfg);
    Rng rng(17);
    std::vector<double> p(200000);
    for (double& x : p) x = std::min(sampler.average_power(sampler.draw(rng, false)), 1e300);
    for (double w : {0.01, 0.1, 1.0, 10.0}) {
      const EmpiricalCf e = empirical_cf(p, w);
      const cplx a = cf(w);
      CHECK(std::abs(e.value.real() - a.real()) < 4.0 * e.se_re);
      CHECK(std::abs(e.value.imag() - a.imag()) < 4.0 * e.se_im);
      CHECK(std::conj(a) == cf(-w));
    }
  }

  TEST_CASE("1 - phi is computed without cancellation") {
    const PerMsPowerCf cf(NetworkConfig::defaults());
    for (double v : {-30.0, -10.0, 0.0, 5.0}) {
      const auto val = cf.at_log(v);
      CHECK(std::abs(val.phi + val.one_minus - 1.0) < 1e-12);
    }
    // The demand tail is heavy, so 1 - phi shrinks slowly but must keep shrinking.
    double last = std::abs(cf.at_log(-20.0).one_minus);
    for (double v : {-25.0, -30.0, -35.0, -40.0}) {
      const double now = std::abs(cf.at_log(v).one_minus);
      CHECK(now > 0.0);
      CHECK(now < last);
      last = now;
    }
  }

  TEST_CASE("memoized values equal direct ones") {
    const NetworkConfig cfg = NetworkConfig::defaults();
    PerMsCfOptions opt;
    opt.memoize = true;
    const PerMsPowerCf memo(cfg, opt);
    const PerMsPowerCf direct(cfg);
    for (double v : {-3.0, 0.5, -3.0}) CHECK(memo.at_log(v).phi == direct.at_log(v).phi);
  }

  TEST_CASE("cell CF composes the per-MS CF") {
    NetworkConfig cfg = NetworkConfig::defaults();
    set_parameter(cfg, "ms_per_bs", 7.0);
    const CellPowerCf cell(cfg);
    CHECK(cell.atom() == doctest::Approx(std::exp(-7.0)));
    for (double w : {1e-3, 0.05, 2.0, 300.0}) {
      const cplx phi = cell.per_ms()(w);
      const cplx ref = std::exp(7.0 * (phi - 1.0));
      CHECK(std::abs(cell(w) - ref) < 1e-12);
      const cplx cont = (ref - cell.atom()) / (1.0 - cell.atom());
      CHECK(std::abs(cell.continuous_at_log(std::log(w)) - cont) < 1e-12);
    }
  }

  TEST_CASE("cell power law against simulated cells") {
    NetworkConfig cfg = NetworkConfig::defaults();
    set_parameter(cfg, "ms_per_bs", 4.0);
    const std::vector<double> grid = default_power_grid(cfg.power.p_max, 61);
    const CellPowerLaw law(cfg, grid.front(), grid.back());
    CHECK(law.atom() == doctest::Approx(std::exp(-4.0)));
    CHECK(law.cdf(0.0) == doctest::Approx(std::exp(-4.0)));
    const TabulatedDistribution t = law.tabulate(grid);
    t.validate(1e-6);

    const std::vector<double> k = {4.0};
    const cells::CellPowers cp = cells::simulate_cells(cfg, k, 20000, 5, true, false);
    const EmpiricalDistribution emp(cp.average[0]);
    CHECK(sup_distance(t, emp) < 0.02);

    const double cap = cfg.power.p_max;
    double trunc = 0.0;
    for (double x : cp.average[0]) trunc += x <= cap ? x : 0.0;
    trunc /= static_cast<double>(cp.average[0].size());
    CHECK(law.truncated_mean(cap) == doctest::Approx(trunc).epsilon(0.05));
  }

  TEST_CASE("ee_average is assemble_ee of the law's ingredients") {
    NetworkConfig cfg = NetworkConfig::defaults();
    set_parameter(cfg, "ms_per_bs", 10.0);
    const double cap = cfg.power.p_max;
    const CellPowerLaw law(cfg, 1e-8 * cap, cap);
    const energy::EnergyReport r = ee_average(cfg);
    const energy::EnergyReport ref =
        energy::assemble_ee(traffic::mean_cell_traffic(cfg.traffic, cfg.lambda_m, cfg.lambda_b), law.cdf(cap),
                            law.truncated_mean(cap), cfg.fading.nt, cfg.power, cfg.exponent_average);
    CHECK(r.ee == doctest::Approx(ref.ee).epsilon(1e-12));
    CHECK(r.non_outage > 0.0);
    CHECK(r.non_outage < 1.0);
  }

  TEST_CASE("power grid") {
    const auto g = default_power_grid(40.0, 5);
    CHECK(g.front() == doctest::Approx(4e-3));
    CHECK(g.back() == doctest::Approx(1000.0));
    CHECK_THROWS_AS(default_power_grid(40.0, 1), DomainError);
  }
}
