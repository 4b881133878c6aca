#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "pvtee/error.hpp"
#include "pvtee/harness.hpp"

using namespace pvtee;
using namespace pvtee::harness;

namespace {

std::string sweep_csv(std::uint64_t seed) {
  SweepSpec s;
  s.parameter = "ms_per_bs";
  s.values = {10.0, 30.0};
  s.replications = 1000;
  s.base = NetworkConfig::defaults();
  s.seed = seed;
  s.schemes = Schemes::waterfill;
  std::ostringstream os;
  write_sweep_header(os);
  write_sweep_rows(os, run_sweep(s).points);
  return os.str();
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("same seed, same bytes") {
    const std::string a = sweep_csv(7), b = sweep_csv(7), c = sweep_csv(8);
    CHECK(a == b);
    CHECK(a != c);
    CHECK(a.find(",7,1000,") != std::string::npos);
  }

  TEST_CASE("EE from cells carries a delta-method error") {
    NetworkConfig cfg = NetworkConfig::defaults();
    std::vector<double> p;
    for (int i = 0; i < 1000; ++i) p.push_back(i % 4 == 0 ? 100.0 : 0.01 * i);
    const energy::EnergyReport r = ee_from_cells(cfg, energy::Scheme::waterfill, p);
    CHECK(r.non_outage == doctest::Approx(0.75));
    CHECK(r.ee_stderr > 0.0);
    CHECK(r.ee_stderr < 0.1 * r.ee);
  }

  TEST_CASE("sweep validation") {
    SweepSpec s;
    s.parameter = "ms_per_bs";
    s.base = NetworkConfig::defaults();
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s.values = {10.0};
    s.replications = 10;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s.replications = 1000;
    s.parameter = "pathloss_exponent";
    s.values = {2.0};
    CHECK_THROWS_AS(s.validate(), ConfigError);
    CHECK_THROWS_AS(parse_schemes("neither"), ConfigError);
  }

  TEST_CASE("non-ratio sweep runs one scenario per value") {
    SweepSpec s;
    s.parameter = "tx_antennas";
    s.values = {2.0, 4.0};
    s.replications = 1000;
    s.base = NetworkConfig::defaults();
    set_parameter(s.base, "ms_per_bs", 5.0);
    s.schemes = Schemes::waterfill;
    const SweepResult r = run_sweep(s);
    REQUIRE(r.points.size() == 2);
    CHECK(r.points[0].value == 2.0);
    CHECK(r.points[0].report.ee > r.points[1].report.ee);
  }

  TEST_CASE("scenario reports both schemes") {
    NetworkConfig cfg = NetworkConfig::defaults();
    set_parameter(cfg, "ms_per_bs", 3.0);
    const ScenarioResult r = run_scenario(cfg, 2000, 1, Schemes::both);
    CHECK(r.points.size() == 3);
    CHECK(r.average_analytic.has_value());
    CHECK(r.waterfill_mc.has_value());
    CHECK(r.average_sup_distance < 0.05);
    for (const SweepPoint& p : r.points) {
      CHECK(std::isfinite(p.report.ee));
      CHECK(p.report.non_outage > 0.0);
      CHECK(p.report.non_outage <= 1.0);
    }
  }

  TEST_CASE("figure files") {
    FigureOptions o;
    o.replications = 1000;
    o.ratios = {5.0, 30.0, 60.0};
    o.schemes = Schemes::waterfill;
    const auto dir = std::filesystem::temp_directory_path() / "pvtee_fig_test";
    std::filesystem::remove_all(dir);
    const FigureSet set = run_figures(NetworkConfig::defaults(), o, dir);
    CHECK(set.files.size() == 6);
    for (const auto& f : set.files) CHECK(std::filesystem::file_size(f) > 0);
    std::ifstream f6(dir / "fig6.csv");
    std::string header;
    std::getline(f6, header);
    CHECK(header.rfind("series,parameter,value,scheme", 0) == 0);
    CHECK(set.cdf_by_ratio.size() == 3);
    std::filesystem::remove_all(dir);
  }
}
