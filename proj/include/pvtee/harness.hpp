#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pvtee/cell_sampler.hpp"
#include "pvtee/distribution.hpp"
#include "pvtee/energy.hpp"
#include "pvtee/network.hpp"

namespace pvtee::harness {

enum class Schemes { both, average, waterfill };

Schemes parse_schemes(const std::string& text);
const char* schemes_name(Schemes s);

/// Relative EE standard error above which a Monte-Carlo point is flagged.
inline constexpr double kStderrTarget = 0.02;

/// One evaluated point. Average-scheme points come twice: the analytic value
/// and the Monte-Carlo cross-check from the same cells as water-filling.
struct SweepPoint {
  std::string series;  ///< label of the enclosing series, may be empty
  std::string parameter;
  double value = 0.0;
  std::string method;  ///< "analytic" or "monte_carlo"
  energy::EnergyReport report;
  std::uint64_t seed = 0;
  std::size_t replications = 0;
  bool converged = true;  ///< stderr within kStderrTarget of the estimate
  std::string error;      ///< nonempty if the point failed
};

struct SweepSpec {
  std::string parameter;  ///< any name set_parameter accepts
  std::vector<double> values;
  std::size_t replications = 50000;
  NetworkConfig base;
  std::uint64_t seed = 1;
  Schemes schemes = Schemes::both;
  std::string series;  ///< copied into every point

  void validate() const;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  /// Cell powers of a ratio sweep (parameter "ms_per_bs"), in value order.
  std::optional<cells::CellPowers> cells;
};

/// Ratio sweeps ("ms_per_bs" or "lambda_m_per_m2") share one set of cells
/// across the values; other parameters run one scenario per value. Every
/// point uses the same seed, so neighbouring points see common random numbers.
SweepResult run_sweep(const SweepSpec& spec);

struct ScenarioResult {
  std::vector<SweepPoint> points;
  std::optional<TabulatedDistribution> average_analytic;  ///< on the default power grid
  std::optional<EmpiricalDistribution> average_mc;
  std::optional<EmpiricalDistribution> waterfill_mc;
  double average_sup_distance = 0.0;  ///< analytic vs MC cdf over the grid
};

ScenarioResult run_scenario(const NetworkConfig& config, std::size_t replications, std::uint64_t seed,
                            Schemes schemes);

/// EE of a set of cell powers with its delta-method standard error.
energy::EnergyReport ee_from_cells(const NetworkConfig& config, energy::Scheme scheme,
                                   const std::vector<double>& cell_powers);

/// Sweep CSV. Numbers are printed with a fixed format so equal results give
/// equal bytes.
void write_sweep_header(std::ostream& out);
void write_sweep_rows(std::ostream& out, const std::vector<SweepPoint>& points);

/// The ratio grid of the EE figures: 20 evenly spaced points from 5 to 60.
std::vector<double> default_ratio_grid();

/// Outputs of the six figure analogues.
struct FigureSet {
  std::vector<std::filesystem::path> files;
  /// ("fig6", rows) ... ("fig9", rows), rows series-labelled.
  std::vector<std::pair<std::string, std::vector<SweepPoint>>> ee_figures;
  /// Water-filling cell powers behind fig4 (sigma 3.5, 4, 4.5 at the base ratio).
  std::vector<std::pair<double, std::vector<double>>> cdf_by_sigma;
  /// Behind fig5 (ratios 20, 30, 40).
  std::vector<std::pair<double, std::vector<double>>> cdf_by_ratio;
};

struct FigureOptions {
  std::size_t replications = 50000;
  std::uint64_t seed = 1;
  Schemes schemes = Schemes::both;
  std::vector<double> ratios = default_ratio_grid();
  bool write = true;
};

/// Runs every sweep of fig4.csv ... fig9.csv from one base config and writes
/// them to `out_dir`. Configs shared between figures are simulated once.
FigureSet run_figures(const NetworkConfig& base, const FigureOptions& options, const std::filesystem::path& out_dir);

}  // namespace pvtee::harness
