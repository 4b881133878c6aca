#include "pvtee/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "pvtee/error.hpp"
#include "pvtee/power_average.hpp"
#include "pvtee/traffic.hpp"

namespace pvtee::harness {

Schemes parse_schemes(const std::string& text) {
  if (text == "both") return Schemes::both;
  if (text == "average") return Schemes::average;
  if (text == "waterfill") return Schemes::waterfill;
  throw ConfigError("scheme", "scheme must be both, average or waterfill");
}

const char* schemes_name(Schemes s) {
  switch (s) {
    case Schemes::both: return "both";
    case Schemes::average: return "average";
    case Schemes::waterfill: return "waterfill";
  }
  return "both";
}

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("sweep", "sweep value list is empty");
  if (replications < 1000) throw ConfigError("replications", "replications must be at least 1000");
  base.validate();
  NetworkConfig probe = base;
  for (double v : values) {
    set_parameter(probe, parameter, v);
    probe.validate();
  }
}

namespace {

bool is_ratio(const std::string& name) { return name == "ms_per_bs" || name == "lambda_m_per_m2"; }

bool want_av(Schemes s) { return s != Schemes::waterfill; }
bool want_wf(Schemes s) { return s != Schemes::average; }

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

SweepPoint make_point(const SweepSpec& spec, double value, const char* method, const energy::EnergyReport& r) {
  SweepPoint p;
  p.series = spec.series;
  p.parameter = spec.parameter;
  p.value = value;
  p.method = method;
  p.report = r;
  p.seed = spec.seed;
  p.replications = std::string(method) == "analytic" ? 0 : spec.replications;
  p.converged = !(r.ee_stderr > kStderrTarget * r.ee);
  return p;
}

SweepPoint failed_point(const SweepSpec& spec, double value, const char* method, energy::Scheme scheme,
                        const std::exception& e) {
  SweepPoint p;
  p.series = spec.series;
  p.parameter = spec.parameter;
  p.value = value;
  p.method = method;
  p.report.scheme = scheme;
  p.report.ee = std::nan("");
  p.seed = spec.seed;
  p.replications = spec.replications;
  p.converged = false;
  p.error = e.what();
  return p;
}

std::shared_ptr<const average::PerMsPowerCf> memoized_per_ms(const NetworkConfig& config) {
  average::PerMsCfOptions opt;
  opt.memoize = true;
  return std::make_shared<const average::PerMsPowerCf>(config, opt);
}

}  // namespace

energy::EnergyReport ee_from_cells(const NetworkConfig& config, energy::Scheme scheme,
                                   const std::vector<double>& cell_powers) {
  const cells::OutageStats o = cells::outage_stats(cell_powers, config.power.p_max);
  const int exponent = scheme == energy::Scheme::average ? config.exponent_average : config.exponent_waterfill;
  const double traffic = traffic::mean_cell_traffic(config.traffic, config.lambda_m, config.lambda_b);
  energy::EnergyReport r =
      energy::assemble_ee(traffic, o.non_outage, o.mean_real_power, config.fading.nt, config.power, exponent);
  const energy::EeGradient g =
      energy::ee_gradient(traffic, o.non_outage, o.mean_real_power, config.fading.nt, config.power, exponent);
  const double var = g.d_non_outage * g.d_non_outage * o.var_non_outage +
                     g.d_real_power * g.d_real_power * o.var_real_power +
                     2.0 * g.d_non_outage * g.d_real_power * o.covariance;
  r.ee_stderr = std::sqrt(std::max(var, 0.0));
  r.scheme = scheme;
  r.bandwidth = config.bandwidth;
  return r;
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult out;
  const bool av = want_av(spec.schemes), wf = want_wf(spec.schemes);

  if (is_ratio(spec.parameter)) {
    std::vector<double> ratios;
    std::vector<NetworkConfig> configs;
    for (double v : spec.values) {
      NetworkConfig c = spec.base;
      set_parameter(c, spec.parameter, v);
      ratios.push_back(c.ms_per_bs());
      configs.push_back(c);
    }
    cells::CellPowers powers = cells::simulate_cells(spec.base, ratios, spec.replications, spec.seed, av, wf);
    std::shared_ptr<const average::PerMsPowerCf> per_ms;
    if (av) {
      try {
        per_ms = memoized_per_ms(spec.base);
      } catch (const std::exception&) {
        per_ms.reset();
      }
    }
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
      const NetworkConfig& c = configs[i];
      if (av) {
        try {
          if (!per_ms) per_ms = memoized_per_ms(spec.base);
          out.points.push_back(make_point(spec, spec.values[i], "analytic", average::ee_average(c, per_ms)));
        } catch (const std::exception& e) {
          out.points.push_back(failed_point(spec, spec.values[i], "analytic", energy::Scheme::average, e));
        }
        out.points.push_back(make_point(spec, spec.values[i], "monte_carlo",
                                        ee_from_cells(c, energy::Scheme::average, powers.average[i])));
      }
      if (wf) {
        out.points.push_back(make_point(spec, spec.values[i], "monte_carlo",
                                        ee_from_cells(c, energy::Scheme::waterfill, powers.waterfill[i])));
      }
    }
    out.cells = std::move(powers);
    return out;
  }

  for (double v : spec.values) {
    NetworkConfig c = spec.base;
    set_parameter(c, spec.parameter, v);
    try {
      ScenarioResult s = run_scenario(c, spec.replications, spec.seed, spec.schemes);
      for (SweepPoint& p : s.points) {
        p.series = spec.series;
        p.parameter = spec.parameter;
        p.value = v;
        out.points.push_back(std::move(p));
      }
    } catch (const std::exception& e) {
      out.points.push_back(failed_point(spec, v, "monte_carlo", energy::Scheme::waterfill, e));
    }
  }
  return out;
}

ScenarioResult run_scenario(const NetworkConfig& config, std::size_t replications, std::uint64_t seed,
                            Schemes schemes) {
  config.validate();
  const bool av = want_av(schemes), wf = want_wf(schemes);
  const double ratio = config.ms_per_bs();
  cells::CellPowers powers = cells::simulate_cells(config, std::span<const double>(&ratio, 1), replications, seed, av, wf);

  SweepSpec spec;
  spec.parameter = "ms_per_bs";
  spec.seed = seed;
  spec.replications = replications;

  ScenarioResult out;
  if (av) {
    const std::vector<double> grid = average::default_power_grid(config.power.p_max);
    average::CellPowerLaw law(config, grid.front() * 1e-4, grid.back());
    out.average_analytic = law.tabulate(grid);
    out.average_mc.emplace(powers.average[0]);
    out.average_sup_distance = sup_distance(*out.average_analytic, *out.average_mc);
    out.points.push_back(make_point(spec, ratio, "analytic", average::ee_average(config)));
    out.points.push_back(make_point(spec, ratio, "monte_carlo", ee_from_cells(config, energy::Scheme::average, powers.average[0])));
  }
  if (wf) {
    out.points.push_back(make_point(spec, ratio, "monte_carlo", ee_from_cells(config, energy::Scheme::waterfill, powers.waterfill[0])));
    out.waterfill_mc.emplace(std::move(powers.waterfill[0]));
  }
  return out;
}

void write_sweep_header(std::ostream& out) {
  out << "series,parameter,value,scheme,method,ee_nat_per_joule,ee_stderr,mean_traffic_nat_per_s_hz,"
         "mean_real_power_watt,non_outage,non_outage_exponent,bandwidth_multiplier,seed,replications,converged,error\n";
}

void write_sweep_rows(std::ostream& out, const std::vector<SweepPoint>& points) {
  for (const SweepPoint& p : points) {
    std::string err = p.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    const energy::EnergyReport& r = p.report;
    out << p.series << ',' << p.parameter << ',' << fmt(p.value) << ',' << energy::scheme_name(r.scheme) << ','
        << p.method << ',' << fmt(r.ee) << ',' << fmt(r.ee_stderr) << ',' << fmt(r.mean_traffic) << ','
        << fmt(r.mean_real_power) << ',' << fmt(r.non_outage) << ',' << r.exponent << ',' << fmt(r.bandwidth) << ','
        << p.seed << ',' << p.replications << ',' << (p.converged ? 1 : 0) << ',' << err << '\n';
  }
}

std::vector<double> default_ratio_grid() {
  std::vector<double> g;
  for (int k = 0; k < 20; ++k) g.push_back(5.0 + 55.0 * k / 19.0);
  return g;
}

namespace {

struct Series {
  std::string label;
  std::vector<std::pair<std::string, double>> settings;
};

std::string config_key(const NetworkConfig& c) { return dump_config(c); }

void write_file(const std::filesystem::path& path, const std::string& text, FigureSet& set) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot write " + path.string());
  f << text;
  if (!f) throw DomainError("write failed for " + path.string());
  set.files.push_back(path);
}

// Empirical cdf on the grid and a central-difference density in x.
std::string distribution_rows(const std::string& key, double key_value, const std::vector<double>& powers,
                              const std::vector<double>& grid, std::uint64_t seed) {
  const EmpiricalDistribution emp(powers);
  std::string s;
  std::vector<double> cdf(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) cdf[i] = emp.cdf(grid[i]);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::size_t a = i == 0 ? 0 : i - 1, b = i + 1 == grid.size() ? i : i + 1;
    const double pdf = (cdf[b] - cdf[a]) / (grid[b] - grid[a]);
    s += key + ',' + fmt(key_value) + ',' + fmt(grid[i]) + ',' + fmt(cdf[i]) + ',' + fmt(pdf) + ',' +
         std::to_string(seed) + ',' + std::to_string(powers.size()) + '\n';
  }
  return s;
}

std::size_t index_of(const std::vector<double>& v, double x) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i] - x) <= 1e-12 * std::abs(x)) return i;
  }
  return v.size();
}

}  // namespace

FigureSet run_figures(const NetworkConfig& base, const FigureOptions& options, const std::filesystem::path& out_dir) {
  base.validate();
  if (options.ratios.size() < 3) throw ConfigError("sweep", "figure sweeps need at least three ratios");
  if (options.write) std::filesystem::create_directories(out_dir);

  std::vector<double> ratios = options.ratios;
  // fig4/fig5 read cells at the base ratio and at 20, 30, 40.
  std::vector<double> extra = {base.ms_per_bs(), 20.0, 30.0, 40.0};
  for (double r : extra) {
    if (index_of(ratios, r) == ratios.size()) ratios.push_back(r);
  }

  const auto fmt_label = [](const std::string& name, double v) { return name + "=" + fmt(v); };
  const std::vector<std::pair<std::string, std::vector<Series>>> figures = {
      {"fig6",
       {{fmt_label("tx_antennas", 2), {{"tx_antennas", 2}}},
        {fmt_label("tx_antennas", 4), {{"tx_antennas", 4}}},
        {fmt_label("tx_antennas", 8), {{"tx_antennas", 8}}}}},
      {"fig7",
       {{fmt_label("pathloss_exponent", 3.5), {{"pathloss_exponent", 3.5}}},
        {fmt_label("pathloss_exponent", 4.0), {{"pathloss_exponent", 4.0}}},
        {fmt_label("pathloss_exponent", 4.5), {{"pathloss_exponent", 4.5}}}}},
      {"fig8",
       {{"tail_index=1.8;rho_min_bit_per_s_hz=2.5", {{"tail_index", 1.8}, {"rho_min_bit_per_s_hz", 2.5}}},
        {"tail_index=1.8;rho_min_bit_per_s_hz=2", {{"tail_index", 1.8}, {"rho_min_bit_per_s_hz", 2.0}}},
        {"tail_index=1.5;rho_min_bit_per_s_hz=2.5", {{"tail_index", 1.5}, {"rho_min_bit_per_s_hz", 2.5}}}}},
      {"fig9",
       {{fmt_label("inf_per_bs", 0.5), {{"inf_per_bs", 0.5}}},
        {fmt_label("inf_per_bs", 0.7), {{"inf_per_bs", 0.7}}},
        {fmt_label("inf_per_bs", 0.9), {{"inf_per_bs", 0.9}}}}},
  };

  // Simulate every distinct config once.
  std::map<std::string, SweepResult> done;
  auto sweep_for = [&](const NetworkConfig& c) -> const SweepResult& {
    const std::string key = config_key(c);
    auto it = done.find(key);
    if (it != done.end()) return it->second;
    SweepSpec spec;
    spec.parameter = "ms_per_bs";
    spec.values = ratios;
    spec.replications = options.replications;
    spec.base = c;
    spec.seed = options.seed;
    spec.schemes = options.schemes;
    return done.emplace(key, run_sweep(spec)).first->second;
  };

  FigureSet set;
  for (const auto& [name, series] : figures) {
    std::vector<SweepPoint> rows;
    for (const Series& s : series) {
      NetworkConfig c = base;
      for (const auto& [k, v] : s.settings) set_parameter(c, k, v);
      const SweepResult& r = sweep_for(c);
      for (const SweepPoint& p : r.points) {
        if (index_of(options.ratios, p.value) == options.ratios.size()) continue;
        rows.push_back(p);
        rows.back().series = s.label;
      }
    }
    if (options.write) {
      std::ostringstream os;
      write_sweep_header(os);
      write_sweep_rows(os, rows);
      write_file(out_dir / (name + ".csv"), os.str(), set);
    }
    set.ee_figures.emplace_back(name, std::move(rows));
  }

  // Distribution figures from the stored cells.
  const std::vector<double> grid = average::default_power_grid(base.power.p_max, 121);
  std::string fig4 = "sigma_label,pathloss_exponent,power_watt,cdf,pdf,seed,replications\n";
  for (double sigma : {3.5, 4.0, 4.5}) {
    NetworkConfig c = base;
    set_parameter(c, "pathloss_exponent", sigma);
    const SweepResult& r = sweep_for(c);
    if (!r.cells || r.cells->waterfill.empty()) break;
    const std::size_t i = index_of(r.cells->ratios, base.ms_per_bs());
    set.cdf_by_sigma.emplace_back(sigma, r.cells->waterfill[i]);
    fig4 += distribution_rows("sigma", sigma, r.cells->waterfill[i], grid, options.seed);
  }
  std::string fig5 = "ratio_label,ms_per_bs,power_watt,cdf,pdf,seed,replications\n";
  {
    const SweepResult& r = sweep_for(base);
    for (double k : {20.0, 30.0, 40.0}) {
      if (!r.cells || r.cells->waterfill.empty()) break;
      const std::size_t i = index_of(r.cells->ratios, k);
      set.cdf_by_ratio.emplace_back(k, r.cells->waterfill[i]);
      fig5 += distribution_rows("ratio", k, r.cells->waterfill[i], grid, options.seed);
    }
  }
  if (options.write && want_wf(options.schemes)) {
    write_file(out_dir / "fig4.csv", fig4, set);
    write_file(out_dir / "fig5.csv", fig5, set);
  }
  std::sort(set.files.begin(), set.files.end());
  return set;
}

}  // namespace pvtee::harness
