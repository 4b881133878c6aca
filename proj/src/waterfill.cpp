#include "pvtee/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pvtee/error.hpp"

namespace pvtee::waterfill {

void WaterfillConfig::validate() const {
  if (effective_noise && !(*effective_noise >= 0.0)) throw DomainError("effective noise must be non-negative");
  if (!(max_power > 0.0)) throw DomainError("maximum power must be positive");
  if (!(tolerance > 0.0)) throw DomainError("bisection tolerance must be positive");
  if (max_iterations < 1) throw DomainError("bisection needs at least one iteration");
}

namespace {

constexpr std::size_t kMaxChannels = 64;

// Water level and active count for floors sorted ascending.
std::pair<double, std::size_t> level_for(const double* floors, std::size_t n, double total) {
  double sum = 0.0;
  std::size_t k = 0;
  double level = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double candidate = (total + sum + floors[i]) / static_cast<double>(i + 1);
    if (candidate <= floors[i]) break;
    sum += floors[i];
    k = i + 1;
    level = candidate;
  }
  return {level, k};
}

}  // namespace

Allocation waterfill(std::span<const double> eigenvalues, double total_power, double noise) {
  if (!(total_power >= 0.0)) throw DomainError("total power must be non-negative");
  if (!(noise >= 0.0)) throw DomainError("noise must be non-negative");
  Allocation out;
  out.power.assign(eigenvalues.size(), 0.0);
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues[i] < 0.0) throw DomainError("eigenvalues must be non-negative");
    if (eigenvalues[i] > 0.0) order.push_back(i);
  }
  if (order.empty() || total_power == 0.0) return out;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return eigenvalues[a] > eigenvalues[b]; });
  std::vector<double> floors(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) floors[i] = noise / eigenvalues[order[i]];
  const auto [level, k] = level_for(floors.data(), floors.size(), total_power);
  out.level = level;
  out.active = k;
  // P_i = (P + sum_j (f_j - f_i)) / k; every difference is bounded by P, so
  // the powers sum to P without the cancellation in level - f_i.
  for (std::size_t i = 0; i < k; ++i) {
    double s = total_power;
    for (std::size_t j = 0; j < k; ++j) s += floors[j] - floors[i];
    out.power[order[i]] = std::max(s / static_cast<double>(k), 0.0);
  }
  return out;
}

double wf_rate(std::span<const double> eigenvalues, std::span<const double> allocation, double p_interference,
               double bandwidth) {
  if (eigenvalues.size() != allocation.size()) throw DomainError("eigenvalue and allocation sizes differ");
  if (!(p_interference > 0.0)) throw DomainError("interference power must be positive");
  double r = 0.0;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) r += std::log1p(allocation[i] * eigenvalues[i] / p_interference);
  return bandwidth * r;
}

double equal_split_rate(std::span<const double> eigenvalues, double total_power, double p_interference,
                        double bandwidth) {
  const auto n = std::count_if(eigenvalues.begin(), eigenvalues.end(), [](double l) { return l > 0.0; });
  if (n == 0) return 0.0;
  std::vector<double> alloc(eigenvalues.size(), 0.0);
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues[i] > 0.0) alloc[i] = total_power / static_cast<double>(n);
  }
  return wf_rate(eigenvalues, alloc, p_interference, bandwidth);
}

Balance solve_balance(double rho, std::span<const double> eigenvalues, double p_interference,
                      const WaterfillConfig& config, double bandwidth) {
  if (!(rho > 0.0)) throw DomainError("rate demand must be positive");
  if (!(p_interference > 0.0)) throw DomainError("interference power must be positive");
  const double noise = config.effective_noise.value_or(p_interference);

  // Descending nonzero eigenvalues with their floors, kept on the stack.
  double lam[kMaxChannels], floors[kMaxChannels];
  std::size_t n = 0;
  for (double l : eigenvalues) {
    if (l < 0.0) throw DomainError("eigenvalues must be non-negative");
    if (l > 0.0) {
      if (n == kMaxChannels) throw DomainError("too many eigenchannels");
      lam[n++] = l;
    }
  }
  Balance out;
  if (n == 0) {
    out.power = std::numeric_limits<double>::infinity();
    out.outage = true;
    return out;
  }
  std::sort(lam, lam + n, std::greater<>());
  for (std::size_t i = 0; i < n; ++i) floors[i] = noise / lam[i];

  auto rate = [&](double total) {
    const auto [level, k] = level_for(floors, n, total);
    double r = 0.0;
    for (std::size_t i = 0; i < k; ++i) r += std::log1p((level - floors[i]) * lam[i] / p_interference);
    return bandwidth * r;
  };

  double hi = 10.0 * config.max_power;
  double lo = 0.0;
  while (rate(hi) < rho) {
    lo = hi;
    hi *= 2.0;
    ++out.iterations;
    if (!std::isfinite(hi) || hi > 1e300) {
      out.power = std::numeric_limits<double>::infinity();
      out.outage = true;
      return out;
    }
  }
  if (lo == 0.0) {
    while (hi > 1e-300 && rate(0.5 * hi) >= rho) {
      hi *= 0.5;
      ++out.iterations;
    }
    lo = 0.5 * hi;
  }
  int bisections = 0;
  while (hi - lo > config.tolerance * hi) {
    if (++bisections > config.max_iterations) {
      throw ConvergenceError("balance bisection exhausted its iterations", 0.5 * (lo + hi), (hi - lo) / hi);
    }
    const double mid = 0.5 * (lo + hi);
    (rate(mid) < rho ? lo : hi) = mid;
    ++out.iterations;
  }
  out.power = 0.5 * (lo + hi);
  out.outage = out.power > config.max_power;
  return out;
}

}  // namespace pvtee::waterfill
