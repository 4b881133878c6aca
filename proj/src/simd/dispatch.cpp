#include <cstdlib>
#include <string>

#include "pvtee/error.hpp"
#include "pvtee/simd/kernels.hpp"

namespace pvtee::simd {

#ifndef PVTEE_BUILD_AVX2
namespace avx2 {
bool available() { return false; }
RationalSums rational_sums(const double* a, const double* w, std::size_t n, double r, double c, double s) {
  return scalar::rational_sums(a, w, n, r, c, s);
}
TrigSums trig_sums(const double* t, const double* wc, const double* ws, std::size_t n, double scale) {
  return scalar::trig_sums(t, wc, ws, n, scale);
}
}  // namespace avx2
#else
namespace avx2 {
bool available() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}
}  // namespace avx2
#endif

namespace {

Isa initial_isa() {
  const char* env = std::getenv("PVTEE_SIMD");
  if (env != nullptr && std::string(env) == "scalar") return Isa::scalar;
  return avx2::available() ? Isa::avx2 : Isa::scalar;
}

Isa& current() {
  static Isa isa = initial_isa();
  return isa;
}

}  // namespace

Isa active_isa() { return current(); }

void set_isa(Isa isa) {
  if (isa == Isa::avx2 && !avx2::available()) throw DomainError("AVX2 kernels are not available on this machine");
  current() = isa;
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

RationalSums rational_sums(const double* a, const double* w, std::size_t n, double r, double c, double s) {
  return current() == Isa::avx2 ? avx2::rational_sums(a, w, n, r, c, s) : scalar::rational_sums(a, w, n, r, c, s);
}

TrigSums trig_sums(const double* t, const double* wc, const double* ws, std::size_t n, double scale) {
  return current() == Isa::avx2 ? avx2::trig_sums(t, wc, ws, n, scale) : scalar::trig_sums(t, wc, ws, n, scale);
}

}  // namespace pvtee::simd
