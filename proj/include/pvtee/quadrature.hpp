#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <queue>
#include <vector>

namespace pvtee {

/// Tolerances for adaptive integration.
struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;

  /// Throws ConfigError unless tolerances are positive and max_subdivisions >= 1.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  ///< estimated absolute error
  int evaluations = 0;
  int subdivisions = 0;
  bool converged = false;
};

using RealFunction = std::function<double(double)>;

/// Globally adaptive 21-point Gauss-Kronrod on [a, b]. Never throws on
/// non-convergence; inspect `converged`.
QuadratureResult integrate(const RealFunction& f, double a, double b, const QuadratureSpec& spec = {});

/// Integral over [lower, +inf) via the map x = lower + t/(1-t).
QuadratureResult integrate_semi_infinite(const RealFunction& f, double lower, const QuadratureSpec& spec = {});

/// As integrate_semi_infinite, but throws ConvergenceError (carrying the best
/// estimate and achieved error) when the tolerance is not met.
double integrate_semi_infinite_or_throw(const RealFunction& f, double lower, const QuadratureSpec& spec = {});

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre nodes and weights (Newton on P_n), cached per n.
const GaussLegendreRule& gauss_legendre(int n);

/// 21-point Kronrod rule on [-1, 1]: xk[0] is the centre, odd indices of
/// xk are the positive 10-point Gauss nodes with weights wg[(j - 1) / 2].
struct Gk21Rule {
  std::array<double, 11> xk;
  std::array<double, 11> wk;
  std::array<double, 5> wg;
};
const Gk21Rule& gk21_rule();

template <std::size_t N>
struct VectorQuadratureResult {
  std::array<double, N> value{};
  std::array<double, N> error{};
  int subdivisions = 0;
  bool converged = false;
};

/// Adaptive Gauss-Kronrod for an N-component integrand sharing one
/// subdivision tree. Converged when every component k satisfies
/// error_k <= max(abs_tol, rel_tol * |value_k|).
template <std::size_t N, class F>
VectorQuadratureResult<N> integrate_vector(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
  using Vec = std::array<double, N>;
  struct Seg {
    double a, b;
    Vec value;
    Vec error;
    double key;
    bool operator<(const Seg& o) const { return key < o.key; }
  };
  const Gk21Rule& rule = gk21_rule();
  Vec total{}, total_err{};
  auto badness = [&](const Vec& err) {
    double worst = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
      const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total[k]));
      worst = std::max(worst, err[k] / tol);
    }
    return worst;
  };
  auto panel = [&](double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    Vec kron{}, gauss{};
    const Vec fc = f(c);
    for (std::size_t k = 0; k < N; ++k) kron[k] = rule.wk[0] * fc[k];
    for (int j = 1; j <= 10; ++j) {
      const Vec l = f(c - h * rule.xk[j]);
      const Vec r = f(c + h * rule.xk[j]);
      for (std::size_t k = 0; k < N; ++k) {
        const double s = l[k] + r[k];
        kron[k] += rule.wk[j] * s;
        if (j % 2 == 1) gauss[k] += rule.wg[(j - 1) / 2] * s;
      }
    }
    Vec err{};
    for (std::size_t k = 0; k < N; ++k) {
      kron[k] *= h;
      gauss[k] *= h;
      err[k] = std::isfinite(kron[k]) ? std::abs(kron[k] - gauss[k]) : INFINITY;
    }
    return Seg{lo, hi, kron, err, 0.0};
  };

  VectorQuadratureResult<N> out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Seg> heap;
  Seg first = panel(a, b);
  total = first.value;
  total_err = first.error;
  first.key = badness(first.error);
  heap.push(first);
  out.subdivisions = 1;
  while (badness(total_err) > 1.0 && out.subdivisions < spec.max_subdivisions) {
    const Seg worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) break;
    heap.pop();
    Seg l = panel(worst.a, mid);
    Seg r = panel(mid, worst.b);
    for (std::size_t k = 0; k < N; ++k) {
      total[k] += l.value[k] + r.value[k] - worst.value[k];
      total_err[k] += l.error[k] + r.error[k] - worst.error[k];
    }
    l.key = badness(l.error);
    r.key = badness(r.error);
    heap.push(l);
    heap.push(r);
    ++out.subdivisions;
  }
  total = Vec{};
  total_err = Vec{};
  while (!heap.empty()) {
    for (std::size_t k = 0; k < N; ++k) {
      total[k] += heap.top().value[k];
      total_err[k] += heap.top().error[k];
    }
    heap.pop();
  }
  out.value = total;
  out.error = total_err;
  out.converged = badness(total_err) <= 1.0;
  return out;
}

}  // namespace pvtee
