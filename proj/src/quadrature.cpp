#include "pvtee/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>

#include "pvtee/error.hpp"

namespace pvtee {

namespace {

// Kronrod 21-point abscissae (index 0 is the centre); odd indices are the
// 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.00000000000000000e+00, 1.48874338981631211e-01, 2.94392862701460198e-01,
    4.33395394129247191e-01, 5.62757134668604683e-01, 6.79409568299024406e-01,
    7.80817726586416897e-01, 8.65063366688984511e-01, 9.30157491355708226e-01,
    9.73906528517171720e-01, 9.95657163025808081e-01,
};
constexpr std::array<double, 11> kWgk = {
    1.49445554002916906e-01, 1.47739104901338491e-01, 1.42775938577060081e-01,
    1.34709217311473326e-01, 1.23491976262065851e-01, 1.09387158802297642e-01,
    9.31254545836976055e-02, 7.50396748109199528e-02, 5.47558965743519960e-02,
    3.25581623079647275e-02, 1.16946388673718743e-02,
};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk21(const RealFunction& f, double a, double b) {
  static const GaussLegendreRule& g10 = gauss_legendre(10);
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = kWgk[0] * fc;
  double gauss = 0.0;  // centre is not a 10-point Gauss node
  for (int j = 1; j <= 10; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    kron += kWgk[j] * s;
    if (j % 2 == 1) {
      // Gauss node index: kXgk[1] = smallest positive node = g10.nodes[5]
      gauss += g10.weights[5 + (j - 1) / 2] * s;
    }
  }
  kron *= h;
  gauss *= h;
  double err = std::abs(kron - gauss);
  if (!std::isfinite(kron)) err = std::numeric_limits<double>::infinity();
  return {a, b, kron, err};
}

}  // namespace

const Gk21Rule& gk21_rule() {
  static const Gk21Rule rule = [] {
    Gk21Rule r;
    r.xk = kXgk;
    r.wk = kWgk;
    const GaussLegendreRule& g10 = gauss_legendre(10);
    for (int i = 0; i < 5; ++i) r.wg[i] = g10.weights[5 + i];
    return r;
  }();
  return rule;
}

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0)) throw ConfigError("rel_tol", "quadrature relative tolerance must be positive");
  if (!(abs_tol > 0.0)) throw ConfigError("abs_tol", "quadrature absolute tolerance must be positive");
  if (max_subdivisions < 1) throw ConfigError("max_subdivisions", "quadrature needs at least one subdivision");
}

QuadratureResult integrate(const RealFunction& f, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  QuadratureResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Segment> heap;
  Segment first = gk21(f, a, b);
  heap.push(first);
  double total = first.value;
  double total_err = first.error;
  out.evaluations = 21;
  out.subdivisions = 1;
  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total)) &&
         out.subdivisions < spec.max_subdivisions) {
    Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) break;  // interval exhausted in floating point
    heap.pop();
    Segment left = gk21(f, worst.a, mid);
    Segment right = gk21(f, mid, worst.b);
    out.evaluations += 42;
    ++out.subdivisions;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed the drift of incremental updates.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.error = total_err;
  out.converged = std::isfinite(total) && total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
  return out;
}

QuadratureResult integrate_semi_infinite(const RealFunction& f, double lower, const QuadratureSpec& spec) {
  auto mapped = [&](double t) {
    if (t >= 1.0) return 0.0;
    const double one_minus = 1.0 - t;
    const double x = lower + t / one_minus;
    const double v = f(x);
    return v == 0.0 ? 0.0 : v / (one_minus * one_minus);
  };
  return integrate(mapped, 0.0, 1.0, spec);
}

double integrate_semi_infinite_or_throw(const RealFunction& f, double lower, const QuadratureSpec& spec) {
  const QuadratureResult r = integrate_semi_infinite(f, lower, spec);
  if (!r.converged) {
    throw ConvergenceError("semi-infinite quadrature did not reach tolerance", r.value, r.error);
  }
  return r.value;
}

const GaussLegendreRule& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1) throw DomainError("gauss_legendre: order must be >= 1");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace pvtee
