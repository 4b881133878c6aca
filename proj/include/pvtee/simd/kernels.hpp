#pragma once

#include <cstddef>

namespace pvtee::simd {

/// Weighted sums over z_i = r * a_i * exp(-j psi):
///   s0 = sum w_i / (1 + z_i),   s1 = sum w_i z_i / (1 + z_i).
/// r * a_i is clamped at 1e150.
struct RationalSums {
  double s0_re = 0.0;
  double s0_im = 0.0;
  double s1_re = 0.0;
  double s1_im = 0.0;
};

/// sum wc_i cos(scale t_i) and sum ws_i sin(scale t_i).
struct TrigSums {
  double cos_sum = 0.0;
  double sin_sum = 0.0;
};

enum class Isa { scalar, avx2 };

namespace scalar {
RationalSums rational_sums(const double* a, const double* w, std::size_t n, double r, double cos_psi, double sin_psi);
TrigSums trig_sums(const double* t, const double* wc, const double* ws, std::size_t n, double scale);
}  // namespace scalar

namespace avx2 {
/// True when the AVX2 variant was compiled in and the CPU supports it.
bool available();
RationalSums rational_sums(const double* a, const double* w, std::size_t n, double r, double cos_psi, double sin_psi);
TrigSums trig_sums(const double* t, const double* wc, const double* ws, std::size_t n, double scale);
}  // namespace avx2

/// Variant in use. Chosen at startup from the CPU, overridable with the
/// PVTEE_SIMD environment variable ("scalar" or "avx2").
Isa active_isa();
/// Throws DomainError when asking for an unavailable variant.
void set_isa(Isa isa);
const char* isa_name(Isa isa);

RationalSums rational_sums(const double* a, const double* w, std::size_t n, double r, double cos_psi, double sin_psi);
TrigSums trig_sums(const double* t, const double* wc, const double* ws, std::size_t n, double scale);

}  // namespace pvtee::simd
