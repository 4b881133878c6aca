#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pvtee/channel.hpp"
#include "pvtee/interference.hpp"
#include "pvtee/network.hpp"
#include "pvtee/waterfill.hpp"

namespace pvtee::cells {

/// Everything drawn for one MS of the typical cell.
struct MsDraw {
  double p_interference = 0.0;  ///< W
  double r0 = 0.0;              ///< m
  double rate = 0.0;            ///< nat/s/Hz
  channel::DirectLink link;     ///< path loss included
};

/// Draws MS realizations and converts them to required powers. Both schemes
/// read the same draw, so their per-MS powers are paired.
class MsSampler {
 public:
  explicit MsSampler(const NetworkConfig& config);

  /// `with_eigenvalues` = false skips the eigen decomposition but consumes
  /// the same random numbers.
  MsDraw draw(Rng& rng, bool with_eigenvalues = true) const;

  /// Equal per-antenna allocation: P_I nt tau / H0 with H0 including path loss.
  double average_power(const MsDraw& d) const;
  waterfill::Balance waterfill_power(const MsDraw& d) const;

  const waterfill::WaterfillConfig& waterfill_config() const { return wf_; }

 private:
  NetworkConfig config_;
  interference::StableLaw law_;
  waterfill::WaterfillConfig wf_;
};

/// Per-cell required powers at several MS-per-BS ratios from one set of
/// cells. Cell c draws its population as the Poisson quantile of one
/// uniform, so populations are nested across ratios; the MSs of a cell draw
/// in order from one stream, so MS j is the same draw at every ratio.
struct CellPowers {
  std::vector<double> ratios;
  std::vector<std::vector<double>> average;    ///< [ratio][cell]; empty if not requested
  std::vector<std::vector<double>> waterfill;  ///< [ratio][cell]
};

CellPowers simulate_cells(const NetworkConfig& config, std::span<const double> ms_per_bs, std::size_t cells,
                          std::uint64_t seed, bool want_average, bool want_waterfill);

/// Outage statistics of a set of cell powers against a cap.
struct OutageStats {
  double non_outage = 0.0;        ///< fraction of cells with P <= cap
  double mean_real_power = 0.0;   ///< mean of P 1(P <= cap)
  double var_non_outage = 0.0;    ///< variances and covariance of the two
  double var_real_power = 0.0;    ///< estimators (already divided by n)
  double covariance = 0.0;
};

OutageStats outage_stats(std::span<const double> cell_powers, double cap);

}  // namespace pvtee::cells
