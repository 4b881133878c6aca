#pragma once

#include <vector>

#include "pvtee/rng.hpp"

namespace pvtee::channel {

struct ShadowingParams {
  double lambda_shape = 0.0;
  double omega = 0.0;
};

/// Gamma approximation of lognormal shadowing with the given dB spread.
ShadowingParams shadowing_params(double sigma_db);

/// Composite Nakagami-m / Gamma-shadowing link over an nt x nr antenna array.
struct FadingParams {
  double m = 1.0;
  double sigma_db = 6.0;
  int nt = 8;
  int nr = 4;
  double lambda_shape = 0.0;  ///< derived from sigma_db
  double omega = 0.0;         ///< derived from sigma_db

  static FadingParams make(double m, double sigma_db, int nt, int nr);

  /// Throws DomainError if a field is out of range or the derived pair does
  /// not match sigma_db.
  void validate() const;

  /// Gamma shape of the summed multipath power, nt * nr * m.
  double multipath_shape() const { return nt * nr * m; }
  /// m * lambda / Omega; H is distributed as X * Y / rate() with
  /// X ~ Gamma(nt nr m), Y ~ Gamma(lambda).
  double rate() const { return m * lambda_shape / omega; }
};

/// K_G density of the composite gain H.
double kg_pdf(double y, const FadingParams& p);
double kg_log_pdf(double y, const FadingParams& p);

/// E[H^alpha] in closed form, 0 < alpha < 1.
double kg_fractional_moment(double alpha, const FadingParams& p);

/// Shadowing factor w with mean Omega.
double sample_shadowing(const FadingParams& p, Rng& rng);

/// One composite gain H = w * sum |z|^2 over the nt*nr sub-channels.
double sample_H(const FadingParams& p, Rng& rng);

struct DirectLink {
  std::vector<double> eigenvalues;  ///< descending, min(nt, nr) of them
  double frobenius_sq = 0.0;        ///< squared Frobenius norm, path loss included
  double shadowing = 0.0;           ///< the shared factor w0
};

/// Draws an nr x nt complex channel with one shared shadowing factor,
/// Nakagami-m magnitudes and uniform phases, scaled by r0^-sigma. Returns the
/// nonzero eigenvalues of the Gram matrix.
DirectLink sample_direct_link(const FadingParams& p, double r0, double sigma, Rng& rng);

std::vector<double> sample_direct_eigenvalues(const FadingParams& p, double r0, double sigma, Rng& rng);

}  // namespace pvtee::channel
