// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.
//
//   acceptance [--out DIR] [--replications N] [--seed S]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pvtee/channel.hpp"
#include "pvtee/distribution.hpp"
#include "pvtee/geometry.hpp"
#include "pvtee/harness.hpp"
#include "pvtee/interference.hpp"
#include "pvtee/network.hpp"
#include "pvtee/parallel.hpp"
#include "pvtee/quadrature.hpp"
#include "pvtee/rng.hpp"
#include "pvtee/waterfill.hpp"

using namespace pvtee;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void report(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double t = seconds_since(t0);
  const bool in_time = limit_s <= 0.0 || t < limit_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  char timing[96];
  if (limit_s > 0.0) {
    std::snprintf(timing, sizeof timing, "%.1f s of %.0f s", t, limit_s);
  } else {
    std::snprintf(timing, sizeof timing, "%.1f s", t);
  }
  std::printf("criterion %2d %s  %s | %s | %s\n", id, pass ? "PASS" : "FAIL", title, o.detail.c_str(), timing);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char b[128];
  std::snprintf(b, sizeof b, f, a);
  return b;
}

// E[H^alpha] by quadrature of the K_G density, in u = log y over the whole line.
double fractional_moment_quadrature(double alpha, const channel::FadingParams& p) {
  const double c = std::log(p.nt * p.nr * p.omega);
  const auto g = [&](double u) {
    const double y = std::exp(u);
    if (!(y > 0.0) || !std::isfinite(y)) return 0.0;
    return std::exp((alpha + 1.0) * u + channel::kg_log_pdf(y, p));
  };
  const QuadratureSpec spec{1e-12, 1e-300, 4000};
  const double upper = integrate_semi_infinite_or_throw([&](double u) { return g(u); }, c, spec);
  const double lower = integrate_semi_infinite_or_throw([&](double u) { return g(-u); }, -c, spec);
  return upper + lower;
}

Outcome fractional_moments() {
  double worst = 0.0;
  int count = 0;
  for (int a10 = 1; a10 <= 9; ++a10) {
    const double alpha = a10 / 10.0;
    for (double m : {0.5, 1.0, 2.0}) {
      for (double sdb : {3.0, 6.0, 9.0}) {
        for (auto [nt, nr] : {std::pair{1, 1}, std::pair{2, 2}, std::pair{8, 4}}) {
          const auto p = channel::FadingParams::make(m, sdb, nt, nr);
          const double closed = channel::kg_fractional_moment(alpha, p);
          const double quad = fractional_moment_quadrature(alpha, p);
          worst = std::max(worst, std::abs(closed - quad) / quad);
          ++count;
        }
      }
    }
  }
  return {worst <= 1e-6, std::to_string(count) + " grid points, max rel err " + fmt("%.2e", worst) + " (tol 1e-6)"};
}

Outcome levy_inversion(const NetworkConfig& cfg) {
  const interference::StableLaw law = cfg.stable_law();
  // CF exp(-sqrt(c |w|) (1 - j sign w)) is the Levy law with scale c = delta^2.
  const double c = law.delta * law.delta;
  const auto levy_pdf = [&](double x) {
    return std::sqrt(c / (2.0 * std::numbers::pi)) * std::pow(x, -1.5) * std::exp(-c / (2.0 * x));
  };
  // F(x) = erfc(sqrt(c / 2x)); quantiles by bisection in log x.
  const auto levy_quantile = [&](double q) {
    double lo = std::log(c) - 20.0, hi = std::log(c) + 40.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (std::erfc(std::sqrt(c / (2.0 * std::exp(mid)))) < q ? lo : hi) = mid;
    }
    return std::exp(0.5 * (lo + hi));
  };
  const double a = levy_quantile(0.01), b = levy_quantile(0.99);
  const int n = 400;
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = a * std::pow(b / a, i / double(n - 1));
  const TabulatedDistribution t = interference::stable_table(law, grid, interference::StableMethod::fourier);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(t.pdf[i] - levy_pdf(grid[i])) / levy_pdf(grid[i]));
  return {worst <= 1e-4, "Fourier inversion on " + std::to_string(n) + " points of the central 98%, max rel err " +
                             fmt("%.2e", worst) + " (tol 1e-4)"};
}

Outcome mc_interference(const NetworkConfig& cfg, std::uint64_t seed) {
  const std::size_t n = 100000;
  const interference::StableLaw law = cfg.stable_law();
  const interference::InterfererModel model = cfg.interferers();
  const geometry::Window window = geometry::Window::for_intensity(cfg.lambda_b);
  std::vector<double> x(n);
  parallel_for(n, 1024, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng(seed, 3, i);
      const geometry::PointPattern bs = geometry::sample_ppp(cfg.lambda_b, window, rng);
      x[i] = interference::mc_aggregate_interference(bs, model, cfg.sigma, rng);
    }
  });

  std::string detail;
  bool cf_ok = true;
  double worst_z = 0.0;
  for (double t : {0.05, 0.2, 0.5, 1.0, 2.0}) {
    // delta |w|^alpha = t
    const double w = std::pow(t / law.delta, 1.0 / law.alpha);
    const EmpiricalCf e = empirical_cf(x, w);
    const std::complex<double> ref = interference::stable_cf(law, w);
    const double zr = std::abs(e.value.real() - ref.real()) / e.se_re;
    const double zi = std::abs(e.value.imag() - ref.imag()) / e.se_im;
    worst_z = std::max({worst_z, zr, zi});
    cf_ok = cf_ok && zr <= 3.0 && zi <= 3.0;
  }

  std::sort(x.begin(), x.end());
  // Model cdf tabulated once, interpolated linearly in log x.
  const double lo = x[n / 1000], hi = x[n - n / 1000];
  const int m = 4000;
  std::vector<double> grid(m);
  for (int i = 0; i < m; ++i) grid[i] = lo * std::pow(hi / lo, i / double(m - 1));
  const TabulatedDistribution tab = interference::stable_table(law, grid);
  const double step = std::log(hi / lo) / (m - 1);
  const auto cdf = [&](double v) {
    if (v <= lo) return v <= 0.0 ? 0.0 : tab.cdf.front();
    if (v >= hi) return tab.cdf.back();
    const double s = std::log(v / lo) / step;
    const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(s), m - 2);
    const double f = s - i;
    return (1.0 - f) * tab.cdf[i] + f * tab.cdf[i + 1];
  };
  std::size_t inside = 0;
  for (double v : x) inside += cdf(v) >= 0.025 && cdf(v) <= 0.975;
  const double ks = ks_statistic_window(x, cdf, 0.025, 0.975);
  const double crit = ks_critical(inside, 0.01);
  detail = "CF max |z| " + fmt("%.2f", worst_z) + " over 5 frequencies (tol 3); KS " + fmt("%.4f", ks) +
           " vs 1% critical " + fmt("%.4f", crit) + " on central 95%, n=100000";
  return {cf_ok && ks <= crit, detail};
}

Outcome nearest_distance(const NetworkConfig& cfg, std::uint64_t seed) {
  const std::size_t n = 100000;
  const geometry::Window window = geometry::Window::for_intensity(cfg.lambda_b);
  std::vector<double> r(n);
  parallel_for(n, 1024, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng(seed, 4, i);
      r[i] = geometry::nearest_point_distance(geometry::sample_ppp(cfg.lambda_b, window, rng), {0.0, 0.0});
    }
  });
  double mean = 0.0;
  for (double v : r) mean += v;
  mean /= n;
  std::sort(r.begin(), r.end());
  const double ks = ks_statistic(r, [&](double v) { return geometry::nearest_distance_cdf(v, cfg.lambda_b); });
  const double crit = ks_critical(n, 0.01);
  const double target = 1.0 / (2.0 * std::sqrt(cfg.lambda_b));
  const double rel = std::abs(mean - target) / target;
  return {ks <= crit && rel <= 0.01, "realized PPP nearest distance: KS " + fmt("%.4f", ks) + " vs " +
                                         fmt("%.4f", crit) + "; mean " + fmt("%.2f", mean) + " m vs " +
                                         fmt("%.2f", target) + " m, rel " + fmt("%.2e", rel) + " (tol 1e-2)"};
}

Outcome waterfill_kkt(const NetworkConfig& cfg, std::uint64_t seed) {
  double sum_err = 0.0, spread = 0.0, inactive_violation = 0.0, rate_deficit = 0.0, round_trip = 0.0;
  bool negative = false;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    Rng rng(seed, 5, i);
    std::vector<double> eig;
    if (i % 2 == 0) {
      const double r0 = geometry::sample_nearest_distance(cfg.lambda_b, rng);
      eig = channel::sample_direct_eigenvalues(cfg.fading, r0, cfg.sigma, rng);
    } else {
      const int k = 1 + static_cast<int>(rng.uniform() * 8.0);
      for (int j = 0; j < k; ++j) eig.push_back(std::pow(10.0, -6.0 + 8.0 * rng.uniform()));
    }
    const double scale = eig.front() > 0.0 ? *std::max_element(eig.begin(), eig.end()) : 1.0;
    const double noise = scale * std::pow(10.0, -4.0 + 6.0 * rng.uniform());
    const double total = std::pow(10.0, -3.0 + 6.0 * rng.uniform());

    const waterfill::Allocation a = waterfill::waterfill(eig, total, noise);
    double s = 0.0, lo = INFINITY, hi = -INFINITY;
    for (std::size_t l = 0; l < eig.size(); ++l) {
      s += a.power[l];
      negative = negative || a.power[l] < 0.0;
      if (a.power[l] > 0.0) {
        const double level = a.power[l] + noise / eig[l];
        lo = std::min(lo, level);
        hi = std::max(hi, level);
      } else if (eig[l] > 0.0) {
        inactive_violation = std::max(inactive_violation, (a.level - noise / eig[l]) / a.level);
      }
    }
    sum_err = std::max(sum_err, std::abs(s - total) / total);
    if (hi >= lo) spread = std::max(spread, (hi - lo) / a.level);

    const double wf = waterfill::wf_rate(eig, a.power, noise);
    const double eq = waterfill::equal_split_rate(eig, total, noise);
    rate_deficit = std::max(rate_deficit, (eq - wf) / std::max(eq, 1e-300));

    waterfill::WaterfillConfig wc;
    wc.max_power = cfg.power.p_max;
    wc.tolerance = 1e-13;
    const waterfill::Balance b = waterfill::solve_balance(wf, eig, noise, wc);
    round_trip = std::max(round_trip, std::abs(b.power - total) / total);
  }
  const bool pass = sum_err <= 1e-12 && !negative && spread <= 1e-10 && inactive_violation <= 1e-12 &&
                    rate_deficit <= 1e-12 && round_trip <= 1e-9;
  return {pass, "10000 instances: power sum " + fmt("%.1e", sum_err) + ", negative " + (negative ? "yes" : "no") +
                    ", level spread " + fmt("%.1e", spread) + ", inactive above level " +
                    fmt("%.1e", inactive_violation) + ", equal-split excess " + fmt("%.1e", rate_deficit) +
                    ", round trip " + fmt("%.1e", round_trip)};
}

Outcome average_cross_validation(const NetworkConfig& cfg, std::size_t replications, std::uint64_t seed) {
  const harness::ScenarioResult r = harness::run_scenario(cfg, replications, seed, harness::Schemes::average);
  return {r.average_sup_distance <= 0.02, "analytic vs " + std::to_string(replications) +
                                              "-cell Monte-Carlo cdf sup-distance " +
                                              fmt("%.4f", r.average_sup_distance) + " (tol 0.02)"};
}

// Decile-wise strict ordering of consecutive samples: sign +1 means each
// later set has larger deciles.
Outcome decile_order(const std::vector<std::pair<double, std::vector<double>>>& sets, int sign, const char* what) {
  if (sets.size() != 3) return {false, "expected three distributions"};
  std::vector<std::vector<double>> q;
  for (const auto& [key, powers] : sets) {
    const EmpiricalDistribution e(powers);
    std::vector<double> d;
    for (int k = 1; k <= 9; ++k) d.push_back(e.quantile(k / 10.0));
    q.push_back(d);
  }
  bool ok = true;
  int broken = 0;
  for (int k = 0; k < 9; ++k) {
    for (std::size_t s = 1; s < q.size(); ++s) {
      const bool ordered = sign > 0 ? q[s][k] > q[s - 1][k] : q[s][k] < q[s - 1][k];
      if (!ordered) {
        ok = false;
        ++broken;
      }
    }
  }
  std::string detail = std::string(what) + ", median W:";
  for (std::size_t s = 0; s < q.size(); ++s) detail += fmt(" %.4g", q[s][4]);
  detail += "; " + std::to_string(broken) + " of 18 decile pairs out of order";
  return {ok, detail};
}

using Rows = std::vector<harness::SweepPoint>;

// EE by series label for one scheme and method, in ratio order.
std::vector<std::pair<std::string, std::vector<const harness::SweepPoint*>>> by_series(const Rows& rows,
                                                                                       energy::Scheme scheme,
                                                                                       const std::string& method) {
  std::vector<std::pair<std::string, std::vector<const harness::SweepPoint*>>> out;
  for (const auto& p : rows) {
    if (p.report.scheme != scheme || p.method != method) continue;
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& s) { return s.first == p.series; });
    if (it == out.end()) {
      out.emplace_back(p.series, std::vector<const harness::SweepPoint*>{});
      it = out.end() - 1;
    }
    it->second.push_back(&p);
  }
  for (auto& [label, pts] : out) {
    std::sort(pts.begin(), pts.end(), [](auto* a, auto* b) { return a->value < b->value; });
  }
  return out;
}

std::vector<double> ee_of(const std::vector<const harness::SweepPoint*>& pts) {
  std::vector<double> v;
  for (auto* p : pts) v.push_back(p->report.ee);
  return v;
}

int sign_changes(const std::vector<double>& ee, std::size_t& argmax) {
  argmax = static_cast<std::size_t>(std::max_element(ee.begin(), ee.end()) - ee.begin());
  int changes = 0, last = 0;
  for (std::size_t i = 1; i < ee.size(); ++i) {
    const double d = ee[i] - ee[i - 1];
    const int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

Outcome ee_properties(const harness::FigureSet& set) {
  const auto rows_of = [&](const std::string& name) -> const Rows& {
    for (const auto& [n, rows] : set.ee_figures) {
      if (n == name) return rows;
    }
    throw std::runtime_error("missing " + name);
  };
  std::ostringstream d;
  bool ok = true;

  // Standard errors of the Monte-Carlo water-filling points.
  double worst_se = 0.0;
  std::size_t points = 0;
  for (const auto& [name, rows] : set.ee_figures) {
    for (const auto& p : rows) {
      if (!p.error.empty()) {
        ok = false;
        d << name << " point failed: " << p.error << "; ";
      }
      if (p.report.scheme == energy::Scheme::waterfill) {
        worst_se = std::max(worst_se, p.report.ee_stderr / p.report.ee);
        ++points;
      }
    }
  }
  const bool se_ok = worst_se <= 0.02;
  ok = ok && se_ok;
  d << "WF rel stderr max " << fmt("%.4f", worst_se) << (se_ok ? "" : " FAIL") << "; ";

  // (a) every figure, every series, every point.
  std::size_t a_bad = 0, a_total = 0;
  for (const auto& [name, rows] : set.ee_figures) {
    const auto av = by_series(rows, energy::Scheme::average, "analytic");
    const auto wf = by_series(rows, energy::Scheme::waterfill, "monte_carlo");
    for (std::size_t s = 0; s < av.size() && s < wf.size(); ++s) {
      for (std::size_t i = 0; i < av[s].second.size() && i < wf[s].second.size(); ++i) {
        ++a_total;
        a_bad += wf[s].second[i]->report.ee < av[s].second[i]->report.ee;
      }
    }
  }
  const bool a_ok = a_total > 0 && a_bad == 0;
  d << "(a) WF<AV at " << a_bad << "/" << a_total << (a_ok ? "" : " FAIL") << "; ";

  // (b) the default series of both schemes.
  bool b_ok = true;
  d << "(b)";
  for (auto [scheme, method] : {std::pair{energy::Scheme::average, "analytic"},
                                std::pair{energy::Scheme::waterfill, "monte_carlo"}}) {
    const auto series = by_series(rows_of("fig6"), scheme, method);
    const auto it = std::find_if(series.begin(), series.end(), [](auto& s) { return s.first == "tx_antennas=8"; });
    if (it == series.end()) {
      b_ok = false;
      continue;
    }
    const std::vector<double> ee = ee_of(it->second);
    std::size_t argmax = 0;
    const int changes = sign_changes(ee, argmax);
    const bool interior = argmax > 0 && argmax + 1 < ee.size();
    const bool one = changes == 1 && interior;
    b_ok = b_ok && one;
    d << " " << energy::scheme_name(scheme) << " peak at ratio " << fmt("%.3g", it->second[argmax]->value)
      << " sign changes " << changes;
  }
  d << (b_ok ? "" : " FAIL") << "; ";

  // (c), (d): pointwise ordering of the three series, both schemes.
  const auto ordered = [&](const std::string& fig, const std::vector<std::string>& increasing_param_labels,
                           std::size_t& bad, std::size_t& total) {
    for (auto [scheme, method] : {std::pair{energy::Scheme::average, "analytic"},
                                  std::pair{energy::Scheme::waterfill, "monte_carlo"}}) {
      const auto series = by_series(rows_of(fig), scheme, method);
      std::vector<std::vector<double>> ee;
      for (const std::string& label : increasing_param_labels) {
        const auto it = std::find_if(series.begin(), series.end(), [&](auto& s) { return s.first == label; });
        if (it == series.end()) throw std::runtime_error(fig + " lacks series " + label);
        ee.push_back(ee_of(it->second));
      }
      for (std::size_t i = 0; i < ee[0].size(); ++i) {
        for (std::size_t s = 1; s < ee.size(); ++s) {
          ++total;
          bad += !(ee[s][i] < ee[s - 1][i]);
        }
      }
    }
  };
  std::size_t c_bad = 0, c_total = 0, d_bad = 0, d_total = 0;
  ordered("fig6", {"tx_antennas=2", "tx_antennas=4", "tx_antennas=8"}, c_bad, c_total);
  ordered("fig9", {"inf_per_bs=0.5", "inf_per_bs=0.7", "inf_per_bs=0.9"}, d_bad, d_total);
  const bool c_ok = c_bad == 0, d_ok = d_bad == 0;
  d << "(c) Nt order broken at " << c_bad << "/" << c_total << (c_ok ? "" : " FAIL") << "; ";
  d << "(d) inf order broken at " << d_bad << "/" << d_total << (d_ok ? "" : " FAIL");
  (void)points;
  return {ok && a_ok && b_ok && c_ok && d_ok, d.str()};
}

std::string sweep_bytes(const NetworkConfig& cfg, std::uint64_t seed) {
  harness::SweepSpec s;
  s.parameter = "ms_per_bs";
  s.values = {5.0, 30.0, 60.0};
  s.replications = 5000;
  s.base = cfg;
  s.seed = seed;
  std::ostringstream os;
  harness::write_sweep_header(os);
  harness::write_sweep_rows(os, harness::run_sweep(s).points);
  return os.str();
}

Outcome determinism(const NetworkConfig& cfg, std::uint64_t seed) {
  ::setenv("PVTEE_THREADS", "1", 1);
  const std::string one = sweep_bytes(cfg, seed);
  ::setenv("PVTEE_THREADS", "3", 1);
  const std::string three = sweep_bytes(cfg, seed);
  ::unsetenv("PVTEE_THREADS");
  const std::string again = sweep_bytes(cfg, seed);
  const bool ok = one == three && three == again;
  return {ok, "sweep CSV (" + std::to_string(one.size()) + " bytes) repeated with 1, 3 and default threads: " +
                  (ok ? "identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::string out_dir = "acceptance_out";
  std::size_t replications = 50000;
  std::uint64_t seed = 1;
  app.add_option("--out", out_dir, "directory for the figure CSVs");
  app.add_option("--replications", replications, "Monte-Carlo cells per point");
  app.add_option("--seed", seed, "base seed");
  CLI11_PARSE(app, argc, argv);

  const NetworkConfig cfg = NetworkConfig::defaults();
  const auto start = Clock::now();

  report(1, "fractional moment closed form vs quadrature", 60.0, fractional_moments);
  report(2, "stable density inversion vs Levy closed form", 60.0, [&] { return levy_inversion(cfg); });
  report(3, "Monte-Carlo aggregate interference vs stable law", 300.0, [&] { return mc_interference(cfg, seed); });
  report(4, "nearest-distance law", 0.0, [&] { return nearest_distance(cfg, seed); });
  report(5, "water-filling KKT suite", 60.0, [&] { return waterfill_kkt(cfg, seed); });
  report(6, "average scheme analytic vs Monte-Carlo cdf", 600.0,
         [&] { return average_cross_validation(cfg, replications, seed); });

  harness::FigureSet set;
  double figure_time = 0.0;
  std::string figure_error;
  {
    const auto t0 = Clock::now();
    try {
      harness::FigureOptions opt;
      opt.replications = replications;
      opt.seed = seed;
      set = harness::run_figures(cfg, opt, out_dir);
    } catch (const std::exception& e) {
      figure_error = e.what();
    }
    figure_time = seconds_since(t0);
  }
  const auto with_figures = [&](const std::function<Outcome()>& f) {
    return [&, f] { return figure_error.empty() ? f() : Outcome{false, "figure run failed: " + figure_error}; };
  };
  report(7, "water-filling power shifts left as sigma grows", 0.0,
         with_figures([&] { return decile_order(set.cdf_by_sigma, -1, "sigma 3.5, 4, 4.5"); }));
  report(8, "power shifts right as MS per BS grows", 0.0,
         with_figures([&] { return decile_order(set.cdf_by_ratio, +1, "ratio 20, 30, 40"); }));
  report(9, "EE sweep properties", 0.0, with_figures([&] {
           Outcome o = ee_properties(set);
           o.detail += "; sweeps " + fmt("%.0f s", figure_time) + " of 1800 s";
           o.pass = o.pass && figure_time < 1800.0;
           return o;
         }));
  report(10, "determinism", 0.0, [&] { return determinism(cfg, seed); });

  std::printf("%d of 10 criteria failed, %.0f s total, figure CSVs in %s\n", failures, seconds_since(start),
              out_dir.c_str());
  return failures == 0 ? 0 : 1;
}
