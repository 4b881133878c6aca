// pvtee command-line front end.
//
//   pvtee validate --config cfg.json
//   pvtee run --config cfg.json [--sweep name=v1,v2,...]... [--scheme both]
//             [--replications N] [--seed S] [--out DIR]
//   pvtee scenario --config cfg.json [--replications N] [--seed S] [--out DIR]
//
// Exit codes: 0 success, 2 config error, 3 numeric convergence failure,
// 1 anything else.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pvtee/error.hpp"
#include "pvtee/harness.hpp"
#include "pvtee/power_average.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace pvtee;

namespace {

constexpr const char* kVersion = "1.0.0";

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("config", "cannot read config file " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

struct SweepArg {
  std::string name;
  std::vector<double> values;
};

SweepArg parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("sweep", "sweep must look like name=v1,v2,...");
  SweepArg s;
  s.name = text.substr(0, eq);
  std::stringstream rest(text.substr(eq + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    try {
      std::size_t used = 0;
      s.values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("sweep", "sweep value \"" + item + "\" is not a number");
    }
  }
  if (s.values.empty()) throw ConfigError("sweep", "sweep value list is empty");
  return s;
}

void write_text(const fs::path& path, const std::string& text, std::vector<fs::path>& written) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw DomainError("cannot write " + path.string());
  written.push_back(path);
}

void write_manifest(const fs::path& dir, const NetworkConfig& config, const std::string& command,
                    std::uint64_t seed, std::size_t replications, harness::Schemes schemes,
                    const std::vector<fs::path>& outputs, double wall, std::size_t flagged) {
  json m;
  m["tool"] = "pvtee";
  m["tool_version"] = kVersion;
  m["command"] = command;
  m["config"] = json::parse(dump_config(config));
  m["seeds"] = json::array({seed});
  m["replications"] = replications;
  m["scheme"] = harness::schemes_name(schemes);
  json out = json::array();
  for (const fs::path& p : outputs) out.push_back(p.filename().string());
  m["outputs"] = out;
  m["under_converged_points"] = flagged;
  m["wall_time_s"] = std::round(wall * 1000.0) / 1000.0;
  std::ofstream f(dir / "manifest.json", std::ios::binary);
  f << m.dump(2) << '\n';
  if (!f) throw DomainError("cannot write manifest");
}

std::size_t count_flagged(const std::vector<harness::SweepPoint>& points) {
  std::size_t n = 0;
  for (const auto& p : points) n += p.converged && p.error.empty() ? 0 : 1;
  return n;
}

// Prints failed points; returns how many there were.
std::size_t report_failures(const std::vector<harness::SweepPoint>& points) {
  std::size_t n = 0;
  for (const auto& p : points) {
    if (p.error.empty()) continue;
    ++n;
    std::cerr << "point " << p.series << (p.series.empty() ? "" : " ") << p.parameter << "=" << p.value << " ("
              << energy::scheme_name(p.report.scheme) << ", " << p.method << ") failed: " << p.error << '\n';
  }
  return n;
}

int cmd_validate(const std::string& path) {
  const NetworkConfig c = parse_config(read_file(path));
  const interference::StableLaw law = c.stable_law();
  json j = json::parse(dump_config(c));
  json d;
  d["alpha"] = c.alpha();
  d["shadowing_shape_lambda"] = c.fading.lambda_shape;
  d["shadowing_mean_omega"] = c.fading.omega;
  d["stable_delta"] = law.delta;
  d["ms_per_bs"] = c.ms_per_bs();
  d["inf_per_bs"] = c.lambda_inf / c.lambda_b;
  d["atom_at_zero"] = c.empty_cell_probability();
  j["derived"] = d;
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_run(const std::string& path, const std::vector<std::string>& sweeps, const std::string& scheme,
            std::size_t replications, std::uint64_t seed, const fs::path& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const NetworkConfig base = parse_config(read_file(path));
  const harness::Schemes schemes = harness::parse_schemes(scheme);
  if (replications < 1000) throw ConfigError("replications", "replications must be at least 1000");
  std::vector<SweepArg> args;
  for (const auto& s : sweeps) args.push_back(parse_sweep(s));
  if (args.size() > 2) throw ConfigError("sweep", "at most two --sweep options (series and inner sweep)");
  fs::create_directories(out);

  std::vector<fs::path> written;
  std::size_t flagged = 0, failed = 0;
  if (args.empty()) {
    harness::FigureOptions opt;
    opt.replications = replications;
    opt.seed = seed;
    opt.schemes = schemes;
    const harness::FigureSet set = harness::run_figures(base, opt, out);
    written = set.files;
    for (const auto& [name, rows] : set.ee_figures) {
      flagged += count_flagged(rows);
      failed += report_failures(rows);
    }
  } else {
    // With two sweeps the first labels series and the second runs inside each.
    const SweepArg& inner = args.back();
    std::vector<std::pair<std::string, NetworkConfig>> series;
    if (args.size() == 2) {
      for (double v : args.front().values) {
        NetworkConfig c = base;
        set_parameter(c, args.front().name, v);
        c.validate();
        char label[96];
        std::snprintf(label, sizeof label, "%s=%.10g", args.front().name.c_str(), v);
        series.emplace_back(label, c);
      }
    } else {
      series.emplace_back("", base);
    }
    std::ostringstream csv;
    harness::write_sweep_header(csv);
    for (const auto& [label, c] : series) {
      harness::SweepSpec spec;
      spec.parameter = inner.name;
      spec.values = inner.values;
      spec.replications = replications;
      spec.base = c;
      spec.seed = seed;
      spec.schemes = schemes;
      spec.series = label;
      const harness::SweepResult r = harness::run_sweep(spec);
      flagged += count_flagged(r.points);
      failed += report_failures(r.points);
      harness::write_sweep_rows(csv, r.points);
    }
    std::string name = "sweep";
    for (const auto& a : args) name += "_" + a.name;
    write_text(out / (name + ".csv"), csv.str(), written);
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(out, base, "run", seed, replications, schemes, written, wall, flagged);
  for (const auto& p : written) std::cout << p.string() << '\n';
  if (flagged > 0) std::cerr << "warning: " << flagged << " point(s) above the 2% standard-error target or failed\n";
  return failed > 0 ? 3 : 0;
}

int cmd_scenario(const std::string& path, const std::string& scheme, std::size_t replications, std::uint64_t seed,
                 const fs::path& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const NetworkConfig c = parse_config(read_file(path));
  const harness::Schemes schemes = harness::parse_schemes(scheme);
  if (replications < 1000) throw ConfigError("replications", "replications must be at least 1000");
  fs::create_directories(out);
  const harness::ScenarioResult r = harness::run_scenario(c, replications, seed, schemes);
  std::vector<fs::path> written;
  {
    std::ostringstream s;
    harness::write_sweep_header(s);
    harness::write_sweep_rows(s, r.points);
    write_text(out / "report.csv", s.str(), written);
  }
  const std::vector<double> grid = average::default_power_grid(c.power.p_max);
  if (r.average_analytic) {
    std::ostringstream p, f;
    r.average_analytic->write_pdf_csv(p, "power_watt");
    r.average_analytic->write_cdf_csv(f, "power_watt");
    write_text(out / "average_pdf.csv", p.str(), written);
    write_text(out / "average_cdf.csv", f.str(), written);
    std::cout << "average: analytic vs Monte-Carlo cdf sup-distance " << r.average_sup_distance << '\n';
  }
  if (r.waterfill_mc) {
    const TabulatedDistribution t = r.waterfill_mc->tabulate(grid);
    std::ostringstream p, f;
    t.write_pdf_csv(p, "power_watt");
    t.write_cdf_csv(f, "power_watt");
    write_text(out / "waterfill_pdf.csv", p.str(), written);
    write_text(out / "waterfill_cdf.csv", f.str(), written);
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(out, c, "scenario", seed, replications, schemes, written, wall, count_flagged(r.points));
  for (const auto& p : written) std::cout << p.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy efficiency of MIMO Poisson-Voronoi cellular networks"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sweeps;
  std::string scheme = "both";
  std::size_t replications = 50000;
  std::uint64_t seed = 1;
  std::string out_dir = "out";

  auto* validate = app.add_subcommand("validate", "check a config and print it with derived parameters");
  validate->add_option("--config", config_path, "JSON config file")->required();

  auto* run = app.add_subcommand("run", "run the figure sweeps, or the given --sweep");
  run->add_option("--config", config_path, "JSON config file")->required();
  run->add_option("--sweep", sweeps, "name=v1,v2,... (repeat once for series x sweep)");
  run->add_option("--scheme", scheme, "both|average|waterfill")->check(CLI::IsMember({"both", "average", "waterfill"}));
  run->add_option("--replications", replications, "Monte-Carlo cells per point");
  run->add_option("--seed", seed, "base seed");
  run->add_option("--out", out_dir, "output directory");

  auto* scenario = app.add_subcommand("scenario", "one scenario with distribution files");
  scenario->add_option("--config", config_path, "JSON config file")->required();
  scenario->add_option("--scheme", scheme, "both|average|waterfill")
      ->check(CLI::IsMember({"both", "average", "waterfill"}));
  scenario->add_option("--replications", replications, "Monte-Carlo cells");
  scenario->add_option("--seed", seed, "base seed");
  scenario->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(config_path);
    if (*run) return cmd_run(config_path, sweeps, scheme, replications, seed, out_dir);
    if (*scenario) return cmd_scenario(config_path, scheme, replications, seed, out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error";
    if (!e.field().empty()) std::cerr << " [" << e.field() << "]";
    std::cerr << ": " << e.what() << '\n';
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << " (estimate " << e.estimate() << ", achieved error "
              << e.achieved_error() << ")\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
