#include "pvtee/cell_sampler.hpp"

#include <algorithm>
#include <cmath>

#include "pvtee/error.hpp"
#include "pvtee/geometry.hpp"
#include "pvtee/parallel.hpp"
#include "pvtee/power_average.hpp"
#include "pvtee/traffic.hpp"

namespace pvtee::cells {

MsSampler::MsSampler(const NetworkConfig& config) : config_(config), law_(config.stable_law()) {
  config_.validate();
  wf_.effective_noise = config.waterfill_fixed_noise;
  wf_.max_power = config.power.p_max;
}

MsDraw MsSampler::draw(Rng& rng, bool with_eigenvalues) const {
  MsDraw d;
  d.p_interference = interference::sample_stable(law_, rng);
  d.r0 = geometry::sample_nearest_distance(config_.lambda_b, rng);
  d.rate = traffic::sample_rate(config_.traffic, rng);
  if (with_eigenvalues) {
    d.link = channel::sample_direct_link(config_.fading, d.r0, config_.sigma, rng);
  } else {
    // Same draws as sample_direct_link, without the decomposition.
    d.link.shadowing = channel::sample_shadowing(config_.fading, rng);
    double frob = 0.0;
    for (int i = 0; i < config_.fading.nt * config_.fading.nr; ++i) {
      frob += rng.gamma(config_.fading.m) / config_.fading.m;
      rng.uniform();
    }
    d.link.frobenius_sq = d.link.shadowing * std::pow(d.r0, -config_.sigma) * frob;
  }
  return d;
}

double MsSampler::average_power(const MsDraw& d) const {
  const double tau = average::tau_from_rate(d.rate, config_.bandwidth);
  return d.p_interference * config_.fading.nt * tau / d.link.frobenius_sq;
}

waterfill::Balance MsSampler::waterfill_power(const MsDraw& d) const {
  if (d.link.eigenvalues.empty()) throw DomainError("water-filling needs the eigenvalues of the draw");
  return waterfill::solve_balance(d.rate, d.link.eigenvalues, d.p_interference, wf_, config_.bandwidth);
}

CellPowers simulate_cells(const NetworkConfig& config, std::span<const double> ms_per_bs, std::size_t cells,
                          std::uint64_t seed, bool want_average, bool want_waterfill) {
  if (ms_per_bs.empty()) throw DomainError("at least one MS-per-BS ratio is required");
  for (double k : ms_per_bs) {
    if (!(k > 0.0)) throw DomainError("MS-per-BS ratios must be positive");
  }
  CellPowers out;
  out.ratios.assign(ms_per_bs.begin(), ms_per_bs.end());
  const std::size_t nk = out.ratios.size();
  if (want_average) out.average.assign(nk, std::vector<double>(cells, 0.0));
  if (want_waterfill) out.waterfill.assign(nk, std::vector<double>(cells, 0.0));

  // The population law is the only thing the ratio changes, so one sampler
  // serves every ratio.
  const MsSampler sampler(config);
  std::vector<std::size_t> order(nk);
  for (std::size_t i = 0; i < nk; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return out.ratios[a] < out.ratios[b]; });

  parallel_for(cells, 256, [&](std::size_t first, std::size_t last) {
    std::vector<std::uint32_t> counts(nk);
    for (std::size_t c = first; c < last; ++c) {
      Rng population(seed, c, 0);
      const double u = population.uniform();
      std::uint32_t n_max = 0;
      for (std::size_t i = 0; i < nk; ++i) {
        counts[i] = poisson_quantile(u, out.ratios[i]);
        n_max = std::max(n_max, counts[i]);
      }
      double sum_av = 0.0, sum_wf = 0.0;
      std::size_t next = 0;
      // MSs draw in order from one stream, so MS j sees the same numbers at
      // every ratio.
      Rng rng(seed, c, 1);
      for (std::uint32_t j = 0; j <= n_max; ++j) {
        while (next < nk && counts[order[next]] == j) {
          if (want_average) out.average[order[next]][c] = sum_av;
          if (want_waterfill) out.waterfill[order[next]][c] = sum_wf;
          ++next;
        }
        if (j == n_max) break;
        const MsDraw d = sampler.draw(rng, want_waterfill);
        if (want_average) sum_av += sampler.average_power(d);
        if (want_waterfill) sum_wf += sampler.waterfill_power(d).power;
      }
    }
  });
  return out;
}

OutageStats outage_stats(std::span<const double> cell_powers, double cap) {
  if (cell_powers.size() < 2) throw DomainError("outage statistics need at least two cells");
  const double n = static_cast<double>(cell_powers.size());
  double s_f = 0.0, s_p = 0.0, s_pp = 0.0;
  for (double p : cell_powers) {
    if (p <= cap) {
      s_f += 1.0;
      s_p += p;
      s_pp += p * p;
    }
  }
  OutageStats o;
  o.non_outage = s_f / n;
  o.mean_real_power = s_p / n;
  // Indicator and truncated power share the event, so E[1 * P1] = E[P1].
  o.var_non_outage = o.non_outage * (1.0 - o.non_outage) / (n - 1.0);
  o.var_real_power = (s_pp / n - o.mean_real_power * o.mean_real_power) / (n - 1.0);
  o.covariance = (o.mean_real_power - o.non_outage * o.mean_real_power) / (n - 1.0);
  return o;
}

}  // namespace pvtee::cells
