#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <vector>

namespace pvtee {

/// Numeric law on an increasing grid, with an optional atom at zero that is
/// included in `cdf` but not in `pdf`.
struct TabulatedDistribution {
  std::vector<double> grid;
  std::vector<double> pdf;
  std::vector<double> cdf;
  double atom_at_zero = 0.0;

  /// Throws DomainError unless sizes agree, the grid increases, the pdf is
  /// nonnegative and the cdf is nondecreasing within `slack`.
  void validate(double slack = 1e-9) const;

  /// Linear interpolation of the cdf; 0 left of the grid (or the atom if
  /// x >= 0), the last value right of it.
  double cdf_at(double x) const;

  /// Smallest grid value whose cdf reaches p (linear inside a cell).
  double quantile(double p) const;

  /// Two-column CSV writers with a header line.
  void write_pdf_csv(std::ostream& out, const char* value_name = "value") const;
  void write_cdf_csv(std::ostream& out, const char* value_name = "value") const;
};

/// Sorted sample with empirical-CDF queries.
class EmpiricalDistribution {
 public:
  explicit EmpiricalDistribution(std::vector<double> samples);

  std::size_t size() const { return sorted_.size(); }
  const std::vector<double>& sorted() const { return sorted_; }

  /// Fraction of samples <= x.
  double cdf(double x) const;
  /// Type-7 sample quantile.
  double quantile(double p) const;

  /// Histogram density and ECDF on the given increasing grid. The pdf in a
  /// cell is assigned to its right endpoint; `atom_at_zero` counts exact zeros.
  TabulatedDistribution tabulate(const std::vector<double>& grid) const;

 private:
  std::vector<double> sorted_;
};

/// Kolmogorov-Smirnov statistic of a sorted sample against a continuous cdf.
double ks_statistic(const std::vector<double>& sorted, const std::function<double(double)>& cdf);

/// Same, using only sample points whose model cdf lies in [lo, hi]; ECDF
/// and model are both rescaled to that window.
double ks_statistic_window(const std::vector<double>& sorted, const std::function<double(double)>& cdf, double lo,
                           double hi);

/// Asymptotic KS critical value at significance level 0.01 (or 0.05).
double ks_critical(std::size_t n, double level = 0.01);

/// max over the grid of |F_tab(x) - F_emp(x)|.
double sup_distance(const TabulatedDistribution& tab, const EmpiricalDistribution& emp);

struct EmpiricalCf {
  std::complex<double> value;
  double se_re = 0.0;  ///< standard error of the real part
  double se_im = 0.0;
};

/// Mean of exp(j omega X) with per-component standard errors.
EmpiricalCf empirical_cf(const std::vector<double>& samples, double omega);

}  // namespace pvtee
