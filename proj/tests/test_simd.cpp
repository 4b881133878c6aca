#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "pvtee/error.hpp"
#include "pvtee/rng.hpp"
#include "pvtee/simd/kernels.hpp"

using namespace pvtee;
using namespace pvtee::simd;

TEST_SUITE("simd") {
  TEST_CASE("scalar rational sums match a direct complex evaluation") {
    const std::vector<double> a = {0.1, 1.0, 10.0}, w = {0.2, 0.5, 0.3};
    const double r = 2.0, psi = M_PI / 4.0;
    std::complex<double> s0 = 0.0, s1 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::complex<double> z = r * a[i] * std::exp(std::complex<double>(0.0, -psi));
      s0 += w[i] / (1.0 + z);
      s1 += w[i] * z / (1.0 + z);
    }
    const RationalSums k = scalar::rational_sums(a.data(), w.data(), a.size(), r, std::cos(psi), std::sin(psi));
    CHECK(k.s0_re == doctest::Approx(s0.real()).epsilon(1e-15));
    CHECK(k.s0_im == doctest::Approx(s0.imag()).epsilon(1e-15));
    CHECK(k.s1_re == doctest::Approx(s1.real()).epsilon(1e-15));
    CHECK(k.s1_im == doctest::Approx(s1.imag()).epsilon(1e-15));
  }

  TEST_CASE("AVX2 kernels agree with the scalar reference") {
    if (!avx2::available()) {
      MESSAGE("AVX2 not available; equivalence skipped");
      return;
    }
    Rng rng(4);
    for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 1001u}) {
      std::vector<double> a(n), w(n), t(n), wc(n), ws(n);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = std::exp(40.0 * (rng.uniform() - 0.5));
        w[i] = rng.uniform();
        t[i] = 1e3 * rng.uniform();
        wc[i] = rng.uniform() - 0.5;
        ws[i] = rng.uniform() - 0.5;
      }
      for (double r : {1e-30, 1e-3, 1.0, 1e5, 1e200}) {
        const RationalSums s = scalar::rational_sums(a.data(), w.data(), n, r, 0.7071067811865476, 0.7071067811865476);
        const RationalSums v = avx2::rational_sums(a.data(), w.data(), n, r, 0.7071067811865476, 0.7071067811865476);
        double wsum = 0.0;
        for (double x : w) wsum += x;
        CHECK(std::abs(s.s0_re - v.s0_re) <= 1e-14 * wsum);
        CHECK(std::abs(s.s0_im - v.s0_im) <= 1e-14 * wsum);
        CHECK(std::abs(s.s1_re - v.s1_re) <= 1e-14 * wsum);
        CHECK(std::abs(s.s1_im - v.s1_im) <= 1e-14 * wsum);
      }
      for (double scale : {1e-3, 1.0, 37.5, 1e4}) {
        const TrigSums s = scalar::trig_sums(t.data(), wc.data(), ws.data(), n, scale);
        const TrigSums v = avx2::trig_sums(t.data(), wc.data(), ws.data(), n, scale);
        double mass = 0.0;
        for (std::size_t i = 0; i < n; ++i) mass += std::abs(wc[i]) + std::abs(ws[i]);
        CHECK(std::abs(s.cos_sum - v.cos_sum) <= 1e-14 * mass);
        CHECK(std::abs(s.sin_sum - v.sin_sum) <= 1e-14 * mass);
      }
    }
  }

  TEST_CASE("dispatch") {
    const Isa before = active_isa();
    set_isa(Isa::scalar);
    CHECK(active_isa() == Isa::scalar);
    CHECK(std::string(isa_name(Isa::scalar)) == "scalar");
    if (avx2::available()) {
      set_isa(Isa::avx2);
      CHECK(active_isa() == Isa::avx2);
    } else {
      CHECK_THROWS_AS(set_isa(Isa::avx2), DomainError);
    }
    set_isa(before);
  }
}
