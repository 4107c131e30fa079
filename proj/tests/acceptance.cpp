// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "kernel_grid.hpp"
#include "perclab/env.hpp"
#include "perclab/experiments.hpp"
#include "perclab/fredholm.hpp"
#include "perclab/kernels.hpp"
#include "perclab/rng.hpp"
#include "perclab/rsk.hpp"
#include "perclab/schur.hpp"
#include "perclab/special.hpp"

using namespace perclab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Gap probabilities computed anywhere in the suite, per grid, for the sanity criterion.
struct GridRecord {
  std::string name;
  std::vector<std::vector<double>> values;  // rows: first threshold, columns: second (or a single column)
};
std::vector<GridRecord> g_grids;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

int g_failures = 0;

void run(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    o.pass = false;
    o.detail += "; runtime above " + num(limit_s) + " s";
  }
  if (!o.pass) ++g_failures;
  std::printf("%s criterion %d: %s | %s | %.1f s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

double single_row_closed_form(int ell, double s) {
  return ell == 1 ? 1 - std::exp(-s) : (1 - std::exp(-s)) * (1 - std::exp(-s));
}

double gap(const KernelPtr& k, std::vector<double> times, std::vector<double> s) {
  FredholmProblem p;
  p.kernel = k;
  p.times = std::move(times);
  p.thresholds = std::move(s);
  return nystrom_gap_probability(p).value;
}

Outcome exact_law() {
  double worst = 0;
  for (int ell : {1, 2}) {
    const KernelPtr k = make_truncated_unitary_log(1, {1}, {ell});
    GridRecord rec{"n=1 ell=" + std::to_string(ell), {}};
    for (double s : {0.25, 0.5, 1.0, 2.0}) {
      const double v = gap(k, {1}, {s});
      rec.values.push_back({v});
      worst = std::max(worst, std::abs(v - single_row_closed_form(ell, s)));
    }
    g_grids.push_back(rec);
  }
  return {worst <= 1e-6, "max |fredholm - closed form| = " + num(worst) + " (tol 1e-6)"};
}

Outcome mc_joint_law() {
  const LayeredSpec spec(2, {1, 2}, {2, 2});
  const std::vector<double> s1{2, 3, 4, 5}, s2{3, 4, 5, 6};
  std::vector<std::vector<double>> grid;
  for (double a : s1)
    for (double b : s2) grid.push_back({a, b});
  const auto mc = monte_carlo_joint_cdf_grid(spec, {1, 2}, grid, 200000, 20240501);
  const KernelPtr k = make_truncated_unitary_log(2, {1, 2}, {2, 2});
  GridRecord rec{"two-time 4x4", std::vector<std::vector<double>>(4, std::vector<double>(4))};
  double worst = 0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double v = gap(k, {1, 2}, grid[g]);
    rec.values[g / 4][g % 4] = v;
    worst = std::max(worst, std::abs(v - mc[g].estimate));
  }
  g_grids.push_back(rec);
  return {worst <= 0.01, "max |fredholm - mc| = " + num(worst) + " over 16 points, 2e5 samples, dkw " +
                             num(mc[0].dkw_band) + " (tol 0.01)"};
}

Outcome rsk_bridge() {
  const LayeredSpec spec(3, {1}, {5});
  const std::vector<double> x(3, std::sqrt(0.5));
  const GeometricY y{std::vector<double>(5, std::sqrt(0.5))};
  int equal = 0;
  for (int a = 0; a < 1000; ++a)
    equal += lambda1_equals_lpp_check(sample_geometric_blocks(spec, 1, x, y, 7000 + a));
  int dp_equal = 0;
  for (int code = 0; code < 729; ++code) {
    std::vector<double> v;
    for (int c = code, k = 0; k < 6; ++k, c /= 3) v.push_back(c % 3);
    const ClockArray arr(2, {3}, v, ClockMode::Geometric);
    dp_equal += last_passage_time(arr) == brute_force_lpp(arr);
  }
  return {equal == 1000 && dp_equal == 729, "lambda1 = lpp on " + std::to_string(equal) +
                                                "/1000 arrays; dp = enumeration on " + std::to_string(dp_equal) +
                                                "/729 arrays"};
}

Outcome commutation() {
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    CounterRng rng(seed, 99);
    std::vector<double> v(2 * 5);
    for (double& e : v) e = static_cast<double>(rng.next() % 4);
    ok += restriction_commutes_check(ClockArray(2, {2, 3}, v, ClockMode::Geometric), 1);
  }
  return {ok == 500, std::to_string(ok) + "/500 arrays"};
}

Outcome schur_normalization() {
  SchurProcessParams p{2, {0.3, 0.3}, {{0.3, 0.3}, {0.3}}};
  const NormalizationReport r = schur_process_normalization(p, 12);
  const bool pass = r.mass >= 0.999 && std::abs(r.mass + r.tail - 1) <= 1e-9;
  return {pass, "mass up to weight 12 = " + num(r.mass) + ", tail = " + num(r.tail) + ", |mass + tail - 1| = " +
                    num(std::abs(r.mass + r.tail - 1))};
}

Outcome exp_limit() {
  double worst = 0;
  const int nu = 2, ell = 3;
  const ExpLimitParams one{1, {nu}, {ell}};
  const double log_c = log_gamma(double(nu + ell)) - log_gamma(double(nu)) - log_gamma(double(ell));
  for (int k = 1; k <= 50; ++k) {
    const double lam = 0.1 * k;
    const double beta = std::exp(log_c - (nu + ell - 1) * lam + (ell - 1) * std::log(std::expm1(lam)));
    worst = std::max(worst, std::abs(exp_limit_density(one, {{lam}}) - beta));
  }
  double mass_err = 0;
  for (const ExpLimitParams& p : {ExpLimitParams{1, {2}, {3}}, ExpLimitParams{2, {1}, {2}},
                                  ExpLimitParams{1, {1, 2}, {1, 2}}})
    mass_err = std::max(mass_err, std::abs(exp_limit_total_mass(p, 40.0, 1e-10) - 1));
  return {worst <= 1e-10 && mass_err <= 1e-6,
          "max |density - log-beta| = " + num(worst) + " (tol 1e-10); max |mass - 1| = " + num(mass_err) +
              " (tol 1e-6)"};
}

Outcome dual_backend() {
  double worst_backend = 0, worst_perturb = 0;
  const auto base = testing::kernel_cases();
  for (const auto& c : base)
    for (const auto& p : c.points) {
      const double a = (*c.kernel)(p.q, p.x, p.r, p.y, Backend::Quadrature).value;
      const double b = (*c.kernel)(p.q, p.x, p.r, p.y, Backend::Residue).value;
      worst_backend = std::max(worst_backend, std::abs(a - b) / std::abs(b));
    }
  for (double perturb : {0.9, 1.1}) {
    KernelOptions o;
    o.perturb = perturb;
    const auto moved = testing::kernel_cases(o);
    for (std::size_t c = 0; c < base.size(); ++c)
      for (const auto& p : base[c].points) {
        const double a = (*moved[c].kernel)(p.q, p.x, p.r, p.y, Backend::Quadrature).value;
        const double b = (*base[c].kernel)(p.q, p.x, p.r, p.y, Backend::Quadrature).value;
        worst_perturb = std::max(worst_perturb, std::abs(a - b) / std::abs(b));
      }
  }
  return {worst_backend <= 1e-8 && worst_perturb <= 1e-8,
          "4 kernels x 12 points: max relative backend gap " + num(worst_backend) + ", max relative change under " +
              "+-10% contour perturbation " + num(worst_perturb) + " (tol 1e-8)"};
}

std::string ladder_text(const Report& r) {
  std::string s;
  for (const auto& row : r.table.rows) {
    s += (s.empty() ? "" : "; ") + row[0] + ":";
    for (std::size_t c = 1; c < row.size(); ++c) s += " " + num(std::stod(row[c]));
  }
  return s;
}

Outcome ladder(LimitKind kind, const std::string& rungs, std::optional<double> tol) {
  RunOptions o;
  o.tol = tol;
  const Report r = run_converge(kind, rungs, o);
  return {r.passed(), "errors " + ladder_text(r) + (tol ? ", last rung tol " + num(*tol) : std::string())};
}

Outcome critical_convergence() {
  const std::vector<double> ss{-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5};
  std::vector<double> limit;
  for (double s : ss) limit.push_back(critical_fidi({1.0}, {s}).value);
  std::vector<double> dev;
  std::string text;
  for (const auto& [n, nu, ell] : {std::array{2, 8, 64}, std::array{3, 16, 256}}) {
    const int R = scaled_time(1.0, nu);
    const LayeredSpec spec(n, std::vector<int>(R, nu), std::vector<int>(R, ell));
    const auto raw = sample_lpp_values(spec, {R}, 0, 10000, 1234);
    std::vector<double> scaled;
    for (const auto& v : raw) scaled.push_back(critical_rescale(n, nu, ell, 1.0, v[0]));
    std::sort(scaled.begin(), scaled.end());
    double worst = 0;
    for (std::size_t k = 0; k < ss.size(); ++k) {
      const double ecdf =
          double(std::upper_bound(scaled.begin(), scaled.end(), ss[k]) - scaled.begin()) / double(scaled.size());
      worst = std::max(worst, std::abs(ecdf - limit[k]));
    }
    dev.push_back(worst);
    text += (text.empty() ? "" : "; ") + std::to_string(n) + ":" + std::to_string(nu) + ":" + std::to_string(ell) +
            " max |ecdf - limit| " + num(worst);
  }
  const bool pass = dev[1] < dev[0] && dev[1] <= 0.05;
  return {pass, text + " (decreasing " + (dev[1] < dev[0] ? "yes" : "no") + ", tol 0.05 at last rung; dkw " +
                    num(dkw_band(10000)) + ")"};
}

Outcome sanity() {
  double lo = 1, hi = 0, worst_drop = 0;
  for (const auto& g : g_grids)
    for (std::size_t i = 0; i < g.values.size(); ++i)
      for (std::size_t j = 0; j < g.values[i].size(); ++j) {
        lo = std::min(lo, g.values[i][j]);
        hi = std::max(hi, g.values[i][j]);
        if (i + 1 < g.values.size()) worst_drop = std::max(worst_drop, g.values[i][j] - g.values[i + 1][j]);
        if (j + 1 < g.values[i].size()) worst_drop = std::max(worst_drop, g.values[i][j] - g.values[i][j + 1]);
      }
  const bool range = lo >= -1e-8 && hi <= 1 + 1e-8, monotone = worst_drop <= 1e-8;
  bool small = true;
  std::string near_zero;
  for (int ell : {1, 2}) {
    const double v = gap(make_truncated_unitary_log(1, {1}, {ell}), {1}, {0.01});
    small = small && v < 1e-3;
    near_zero += " ell=" + std::to_string(ell) + ": " + num(v) + (v < 1e-3 ? " ok" : " above 1e-3") + ";";
  }
  return {range && monotone && small, "range [" + num(lo) + ", " + num(hi) + "], largest decrease " +
                                          num(worst_drop) + "; value at s=0.01:" + near_zero};
}

}  // namespace

int main() {
  run(1, "exact single-row law", 60, exact_law);
  run(2, "monte carlo vs fredholm joint law", 600, mc_joint_law);
  run(3, "rsk first row equals last-passage time", 60, rsk_bridge);
  run(4, "restriction commutes with erasing", 60, commutation);
  run(5, "schur process normalization", 300, schur_normalization);
  run(6, "exponential-limit density", 300, exp_limit);
  run(7, "kernel dual-backend equality", 300, dual_backend);
  run(8, "hard-edge limit of the ginibre kernel", 600,
      [] { return ladder(LimitKind::HardEdge, "16,32,64", 1e-2); });
  run(9, "truncated-unitary hard-edge limit", 600,
      [] { return ladder(LimitKind::TruncatedUnitary, "2:64,3:256,4:1024", std::nullopt); });
  run(10, "hard-to-soft transition", 600, [] { return ladder(LimitKind::HardToSoft, "8,16,32", std::nullopt); });
  run(11, "critical process convergence", 1800, critical_convergence);
  run(12, "probability sanity", 60, sanity);
  std::printf("%d of 12 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
