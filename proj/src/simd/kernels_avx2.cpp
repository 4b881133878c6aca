#include <immintrin.h>

#include <cmath>

#include "pvtee/simd/kernels.hpp"

namespace pvtee::simd::avx2 {

namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Cephes sin/cos coefficients on [-pi/4, pi/4].
constexpr double kSin[6] = {1.58962301576546568060e-10, -2.50507477628578072866e-8, 2.75573136213857245213e-6,
                            -1.98412698295895385996e-4, 8.33333333332211858878e-3,  -1.66666666666666307295e-1};
constexpr double kCos[6] = {-1.13585365213876817300e-11, 2.08757008419747316778e-9, -2.75573141792967388112e-7,
                            2.48015872888517045348e-5,   -1.38888888888730564116e-3, 4.16666666666665929218e-2};
constexpr double kDp1 = 7.853981554508209228515625e-1;
constexpr double kDp2 = 7.94662735614792836714e-9;
constexpr double kDp3 = 3.06161699786838294307e-17;
constexpr double kFourOverPi = 1.27323954473516268615;
constexpr double kLargeArg = 1e6;

__m256d poly(__m256d x, const double* c) {
  __m256d y = _mm256_set1_pd(c[0]);
  for (int i = 1; i < 6; ++i) y = _mm256_fmadd_pd(y, x, _mm256_set1_pd(c[i]));
  return y;
}

void sincos4(__m256d x, __m256d& sin_out, __m256d& cos_out) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d ax = _mm256_andnot_pd(sign_mask, x);
  const __m256d xsign = _mm256_and_pd(sign_mask, x);

  __m256d y = _mm256_floor_pd(_mm256_mul_pd(ax, _mm256_set1_pd(kFourOverPi)));
  // octant j = y mod 8, made even
  __m256d j = _mm256_sub_pd(y, _mm256_mul_pd(_mm256_set1_pd(8.0), _mm256_floor_pd(_mm256_mul_pd(y, _mm256_set1_pd(0.125)))));
  const __m256d odd = _mm256_sub_pd(j, _mm256_mul_pd(_mm256_set1_pd(2.0), _mm256_floor_pd(_mm256_mul_pd(j, _mm256_set1_pd(0.5)))));
  y = _mm256_add_pd(y, odd);
  j = _mm256_add_pd(j, odd);
  j = _mm256_blendv_pd(j, _mm256_setzero_pd(), _mm256_cmp_pd(j, _mm256_set1_pd(8.0), _CMP_EQ_OQ));

  __m256d z = _mm256_fnmadd_pd(y, _mm256_set1_pd(kDp1), ax);
  z = _mm256_fnmadd_pd(y, _mm256_set1_pd(kDp2), z);
  z = _mm256_fnmadd_pd(y, _mm256_set1_pd(kDp3), z);
  const __m256d zz = _mm256_mul_pd(z, z);

  const __m256d ps = _mm256_fmadd_pd(_mm256_mul_pd(z, zz), poly(zz, kSin), z);
  __m256d pc = _mm256_fnmadd_pd(_mm256_set1_pd(0.5), zz, _mm256_set1_pd(1.0));
  pc = _mm256_fmadd_pd(_mm256_mul_pd(zz, zz), poly(zz, kCos), pc);

  const __m256d upper = _mm256_cmp_pd(j, _mm256_set1_pd(3.0), _CMP_GT_OQ);
  const __m256d jm = _mm256_blendv_pd(j, _mm256_sub_pd(j, _mm256_set1_pd(4.0)), upper);
  const __m256d swap = _mm256_cmp_pd(jm, _mm256_set1_pd(2.0), _CMP_EQ_OQ);

  const __m256d flip_upper = _mm256_and_pd(upper, sign_mask);
  const __m256d flip_swap = _mm256_and_pd(swap, sign_mask);
  sin_out = _mm256_xor_pd(_mm256_blendv_pd(ps, pc, swap), _mm256_xor_pd(xsign, flip_upper));
  cos_out = _mm256_xor_pd(_mm256_blendv_pd(pc, ps, swap), _mm256_xor_pd(flip_upper, flip_swap));
}

}  // namespace

RationalSums rational_sums(const double* a, const double* w, std::size_t n, double r, double c, double s) {
  const __m256d vr = _mm256_set1_pd(r);
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d cap = _mm256_set1_pd(1e150);
  __m256d s0r = _mm256_setzero_pd(), s0i = _mm256_setzero_pd();
  __m256d s1r = _mm256_setzero_pd(), s1i = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_min_pd(_mm256_mul_pd(vr, _mm256_loadu_pd(a + i)), cap);
    const __m256d re = _mm256_fmadd_pd(x, vc, one);
    const __m256d im = _mm256_mul_pd(x, vs);
    const __m256d d = _mm256_fmadd_pd(re, re, _mm256_mul_pd(im, im));
    const __m256d q = _mm256_div_pd(_mm256_loadu_pd(w + i), d);
    s0r = _mm256_fmadd_pd(q, re, s0r);
    s0i = _mm256_fmadd_pd(q, im, s0i);
    s1r = _mm256_fmadd_pd(_mm256_mul_pd(q, x), _mm256_add_pd(vc, x), s1r);
    s1i = _mm256_fnmadd_pd(q, im, s1i);
  }
  RationalSums out{hsum(s0r), hsum(s0i), hsum(s1r), hsum(s1i)};
  if (i < n) {
    const RationalSums rest = scalar::rational_sums(a + i, w + i, n - i, r, c, s);
    out.s0_re += rest.s0_re;
    out.s0_im += rest.s0_im;
    out.s1_re += rest.s1_re;
    out.s1_im += rest.s1_im;
  }
  return out;
}

TrigSums trig_sums(const double* t, const double* wc, const double* ws, std::size_t n, double scale) {
  const __m256d vscale = _mm256_set1_pd(scale);
  const __m256d limit = _mm256_set1_pd(kLargeArg);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d cs = _mm256_setzero_pd(), ss = _mm256_setzero_pd();
  TrigSums out;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d arg = _mm256_mul_pd(vscale, _mm256_loadu_pd(t + i));
    if (_mm256_movemask_pd(_mm256_cmp_pd(_mm256_andnot_pd(sign_mask, arg), limit, _CMP_GT_OQ)) != 0) {
      const TrigSums part = scalar::trig_sums(t + i, wc + i, ws + i, 4, scale);
      out.cos_sum += part.cos_sum;
      out.sin_sum += part.sin_sum;
      continue;
    }
    __m256d sv, cv;
    sincos4(arg, sv, cv);
    cs = _mm256_fmadd_pd(_mm256_loadu_pd(wc + i), cv, cs);
    ss = _mm256_fmadd_pd(_mm256_loadu_pd(ws + i), sv, ss);
  }
  out.cos_sum += hsum(cs);
  out.sin_sum += hsum(ss);
  if (i < n) {
    const TrigSums rest = scalar::trig_sums(t + i, wc + i, ws + i, n - i, scale);
    out.cos_sum += rest.cos_sum;
    out.sin_sum += rest.sin_sum;
  }
  return out;
}

}  // namespace pvtee::simd::avx2
