#include "pvtee/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "pvtee/error.hpp"
#include "pvtee/simd/kernels.hpp"

namespace pvtee {

void TabulatedDistribution::validate(double slack) const {
  if (grid.size() != pdf.size() || grid.size() != cdf.size()) throw DomainError("tabulated columns differ in length");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("grid must be strictly increasing");
    if (pdf[i] < -slack) throw DomainError("negative density in tabulated distribution");
    if (i > 0 && cdf[i] < cdf[i - 1] - slack) throw DomainError("cdf decreases in tabulated distribution");
  }
}

double TabulatedDistribution::cdf_at(double x) const {
  if (grid.empty()) return x >= 0.0 ? atom_at_zero : 0.0;
  if (x < grid.front()) return x >= 0.0 ? atom_at_zero : 0.0;
  if (x >= grid.back()) return cdf.back();
  const auto it = std::upper_bound(grid.begin(), grid.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - grid.begin());
  const double t = (x - grid[i - 1]) / (grid[i] - grid[i - 1]);
  return cdf[i - 1] + t * (cdf[i] - cdf[i - 1]);
}

double TabulatedDistribution::quantile(double p) const {
  if (grid.empty()) throw DomainError("quantile of an empty table");
  if (p <= cdf.front()) return grid.front();
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (cdf[i] >= p) {
      const double span = cdf[i] - cdf[i - 1];
      const double t = span > 0.0 ? (p - cdf[i - 1]) / span : 1.0;
      return grid[i - 1] + t * (grid[i] - grid[i - 1]);
    }
  }
  return grid.back();
}

void TabulatedDistribution::write_pdf_csv(std::ostream& out, const char* value_name) const {
  out << value_name << ",pdf\n";
  out.precision(12);
  for (std::size_t i = 0; i < grid.size(); ++i) out << grid[i] << ',' << pdf[i] << '\n';
}

void TabulatedDistribution::write_cdf_csv(std::ostream& out, const char* value_name) const {
  out << value_name << ",cdf\n";
  out.precision(12);
  for (std::size_t i = 0; i < grid.size(); ++i) out << grid[i] << ',' << cdf[i] << '\n';
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.empty()) throw DomainError("empirical distribution needs at least one sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalDistribution::cdf(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalDistribution::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
  const double h = p * static_cast<double>(sorted_.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted_.size() - 1);
  const double a = sorted_[lo], b = sorted_[hi];
  if (!std::isfinite(a) || !std::isfinite(b)) return h - lo > 0.0 ? b : a;
  return a + (h - lo) * (b - a);
}

TabulatedDistribution EmpiricalDistribution::tabulate(const std::vector<double>& grid) const {
  TabulatedDistribution tab;
  tab.grid = grid;
  tab.pdf.resize(grid.size());
  tab.cdf.resize(grid.size());
  const double n = static_cast<double>(sorted_.size());
  tab.atom_at_zero =
      static_cast<double>(std::upper_bound(sorted_.begin(), sorted_.end(), 0.0) - std::lower_bound(sorted_.begin(), sorted_.end(), 0.0)) / n;
  double prev_x = 0.0;
  double prev_c = tab.atom_at_zero;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    tab.cdf[i] = cdf(grid[i]);
    const double width = grid[i] - prev_x;
    tab.pdf[i] = width > 0.0 ? std::max(tab.cdf[i] - prev_c, 0.0) / width : 0.0;
    prev_x = grid[i];
    prev_c = tab.cdf[i];
  }
  return tab;
}

double ks_statistic(const std::vector<double>& sorted, const std::function<double(double)>& cdf) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, std::abs((i + 1) / n - f), std::abs(f - i / n)});
  }
  return d;
}

double ks_statistic_window(const std::vector<double>& sorted, const std::function<double(double)>& cdf, double lo,
                           double hi) {
  std::vector<double> inside;
  for (double x : sorted) {
    const double f = cdf(x);
    if (f >= lo && f <= hi) inside.push_back(x);
  }
  if (inside.empty()) return 1.0;
  const double span = hi - lo;
  return ks_statistic(inside, [&](double x) { return (cdf(x) - lo) / span; });
}

double ks_critical(std::size_t n, double level) {
  const double c = level <= 0.01 ? 1.6276 : 1.3581;
  return c / std::sqrt(static_cast<double>(n));
}

double sup_distance(const TabulatedDistribution& tab, const EmpiricalDistribution& emp) {
  double d = 0.0;
  for (std::size_t i = 0; i < tab.grid.size(); ++i) d = std::max(d, std::abs(tab.cdf[i] - emp.cdf(tab.grid[i])));
  return d;
}

EmpiricalCf empirical_cf(const std::vector<double>& samples, double omega) {
  if (samples.empty()) throw DomainError("empirical characteristic function of an empty sample");
  const std::size_t n = samples.size();
  const std::vector<double> ones(n, 1.0);
  const simd::TrigSums first = simd::trig_sums(samples.data(), ones.data(), ones.data(), n, omega);
  const simd::TrigSums second = simd::trig_sums(samples.data(), ones.data(), ones.data(), n, 2.0 * omega);
  const double nn = static_cast<double>(n);
  const double mc = first.cos_sum / nn;
  const double ms = first.sin_sum / nn;
  // cos^2 = (1 + cos 2x) / 2, sin^2 = (1 - cos 2x) / 2
  const double mc2 = 0.5 * (1.0 + second.cos_sum / nn);
  const double ms2 = 0.5 * (1.0 - second.cos_sum / nn);
  EmpiricalCf out;
  out.value = {mc, ms};
  out.se_re = std::sqrt(std::max(mc2 - mc * mc, 0.0) / (nn - 1.0));
  out.se_im = std::sqrt(std::max(ms2 - ms * ms, 0.0) / (nn - 1.0));
  return out;
}

}  // namespace pvtee
