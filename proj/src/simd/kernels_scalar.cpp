#include <algorithm>
#include <cmath>

#include "pvtee/simd/kernels.hpp"

namespace pvtee::simd::scalar {

RationalSums rational_sums(const double* a, const double* w, std::size_t n, double r, double c, double s) {
  RationalSums out;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::min(r * a[i], 1e150);
    const double re = 1.0 + x * c;
    const double im = x * s;
    const double q = w[i] / (re * re + im * im);
    out.s0_re += q * re;
    out.s0_im += q * im;
    out.s1_re += q * x * (c + x);
    out.s1_im -= q * im;
  }
  return out;
}

TrigSums trig_sums(const double* t, const double* wc, const double* ws, std::size_t n, double scale) {
  TrigSums out;
  for (std::size_t i = 0; i < n; ++i) {
    const double arg = scale * t[i];
    out.cos_sum += wc[i] * std::cos(arg);
    out.sin_sum += ws[i] * std::sin(arg);
  }
  return out;
}

}  // namespace pvtee::simd::scalar
