#include "perclab/schur.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

#include "perclab/quadrature.hpp"

namespace perclab {

void SchurProcessParams::validate() const {
  if (n < 1 || static_cast<int>(x.size()) != n) throw std::invalid_argument("SchurProcessParams: x must have length n");
  if (y.empty()) throw std::invalid_argument("SchurProcessParams: at least one block required");
  for (const auto& yk : y) {
    if (yk.empty()) throw std::invalid_argument("SchurProcessParams: empty block");
    for (double xi : x)
      for (double yj : yk)
        if (!(xi * yj > 0 && xi * yj < 1)) throw std::domain_error("SchurProcessParams: x_i y_j must lie in (0, 1)");
  }
}

void ExpLimitParams::validate() const {
  if (n < 1) throw std::invalid_argument("ExpLimitParams: n must be positive");
  if (nu.empty() || nu.size() != ell.size()) throw std::invalid_argument("ExpLimitParams: nu/ell size mismatch");
  if (ell[0] < n) throw std::invalid_argument("ExpLimitParams: ell_1 must be at least n");
  for (std::size_t k = 0; k < nu.size(); ++k)
    if (nu[k] < 1 || ell[k] < 1) throw std::invalid_argument("ExpLimitParams: nu_k, ell_k must be positive");
}

namespace {

// Fraction-free elimination with row pivoting.
long double bareiss_det(std::vector<std::vector<long double>> a) {
  const int m = static_cast<int>(a.size());
  long double sign = 1.0L, prev = 1.0L;
  for (int k = 0; k < m; ++k) {
    int piv = k;
    for (int i = k + 1; i < m; ++i)
      if (std::fabs(a[i][k]) > std::fabs(a[piv][k])) piv = i;
    if (a[piv][k] == 0.0L) return 0.0L;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < m; ++i)
      for (int j = k + 1; j < m; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[m - 1][m - 1];
}

// log |det| and sign by partial pivoting.
std::pair<double, int> log_det(std::vector<std::vector<long double>> a) {
  const int m = static_cast<int>(a.size());
  long double logabs = 0.0L;
  int sign = 1;
  for (int k = 0; k < m; ++k) {
    int piv = k;
    for (int i = k + 1; i < m; ++i)
      if (std::fabs(a[i][k]) > std::fabs(a[piv][k])) piv = i;
    if (a[piv][k] == 0.0L) return {-std::numeric_limits<double>::infinity(), 0};
    if (piv != k) {
      std::swap(a[piv], a[k]);
      sign = -sign;
    }
    if (a[k][k] < 0) sign = -sign;
    logabs += std::log(std::fabs(a[k][k]));
    for (int i = k + 1; i < m; ++i) {
      const long double f = a[i][k] / a[k][k];
      for (int j = k + 1; j < m; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return {static_cast<double>(logabs), sign};
}

// Matrix given entrywise in log form (-inf for zero); rows rescaled first.
std::pair<double, int> log_det_from_logs(const std::vector<std::vector<double>>& logs) {
  const std::size_t m = logs.size();
  std::vector<std::vector<long double>> a(m, std::vector<long double>(m));
  double shift = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double top = *std::max_element(logs[i].begin(), logs[i].end());
    if (top == -std::numeric_limits<double>::infinity()) return {top, 0};
    shift += top;
    for (std::size_t j = 0; j < m; ++j) a[i][j] = std::exp(static_cast<long double>(logs[i][j] - top));
  }
  auto [l, s] = log_det(std::move(a));
  return {l + shift, s};
}

std::vector<int> padded(const Partition& lambda, int m) {
  std::vector<int> p(m, 0);
  for (int i = 0; i < lambda.length(); ++i) p[i] = lambda[i];
  return p;
}

}  // namespace

double schur_jacobi_trudi(const Partition& lambda, const std::vector<double>& x) {
  const int m = static_cast<int>(x.size());
  if (lambda.length() > m) throw std::invalid_argument("schur: partition longer than the variable count");
  const int L = lambda.length();
  if (L == 0) return 1.0;
  const int top = lambda[0] + L;
  std::vector<long double> h(top + 1, 0.0L);
  h[0] = 1.0L;
  for (double xi : x)
    for (int k = 1; k <= top; ++k) h[k] += xi * h[k - 1];
  std::vector<std::vector<long double>> a(L, std::vector<long double>(L));
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) {
      const int idx = lambda[i] - i + j;
      a[i][j] = idx < 0 ? 0.0L : h[idx];
    }
  return static_cast<double>(bareiss_det(std::move(a)));
}

double schur_bialternant(const Partition& lambda, const std::vector<double>& x) {
  const int m = static_cast<int>(x.size());
  if (lambda.length() > m) throw std::invalid_argument("schur: partition longer than the variable count");
  if (lambda.empty()) return 1.0;
  double scale = 0.0, gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    scale = std::max(scale, std::abs(x[i]));
    for (int j = i + 1; j < m; ++j) gap = std::min(gap, std::abs(x[i] - x[j]));
  }
  if (gap <= 1e-4 * scale) return schur_jacobi_trudi(lambda, x);
  const auto p = padded(lambda, m);
  std::vector<std::vector<long double>> a(m, std::vector<long double>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a[i][j] = std::pow(static_cast<long double>(x[i]), p[j] + m - 1 - j);
  long double vdm = 1.0L;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) vdm *= static_cast<long double>(x[i]) - x[j];
  return static_cast<double>(bareiss_det(std::move(a)) / vdm);
}

double skew_schur_tableau_sum(const Partition& lambda, const Partition& mu, const std::vector<double>& y,
                              std::uint64_t budget) {
  if (!lambda.contains(mu)) return 0.0;
  std::map<std::pair<std::vector<int>, int>, long double> memo;
  std::uint64_t visited = 0;
  const int L = lambda.length();
  const auto mup = padded(mu, L);

  // s_{nu/mu}(y_1..y_m): strip off the cells labelled m as a horizontal strip.
  std::function<long double(const std::vector<int>&, int)> rec = [&](const std::vector<int>& nu, int m) -> long double {
    if (nu == mup) return 1.0L;
    if (m == 0) return 0.0L;
    auto key = std::make_pair(nu, m);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    if (++visited > budget) throw std::length_error("skew_schur_tableau_sum: enumeration budget exceeded");
    long double total = 0.0L;
    std::vector<int> inner(L);
    const long double ym = y[m - 1];
    std::function<void(int, int)> choose = [&](int i, int removed) {
      if (i == L) {
        total += rec(inner, m - 1) * std::pow(ym, removed);
        return;
      }
      const int lo = std::max(mup[i], i + 1 < L ? nu[i + 1] : 0);
      for (int v = lo; v <= nu[i]; ++v) {
        inner[i] = v;
        choose(i + 1, removed + nu[i] - v);
      }
    };
    choose(0, 0);
    memo.emplace(std::move(key), total);
    return total;
  };
  return static_cast<double>(rec(padded(lambda, L), static_cast<int>(y.size())));
}

double schur_process_pmf(const SchurProcessParams& params, const std::vector<Partition>& lambdas) {
  params.validate();
  if (static_cast<int>(lambdas.size()) != params.q())
    throw std::invalid_argument("schur_process_pmf: need one partition per block");
  for (const auto& l : lambdas)
    if (l.length() > params.n) return 0.0;
  Partition prev;
  for (const auto& l : lambdas) {
    if (!l.contains(prev)) return 0.0;
    prev = l;
  }
  long double logz = 0.0L;
  for (double xi : params.x)
    for (const auto& yk : params.y)
      for (double yj : yk) logz += std::log1p(-static_cast<long double>(xi) * yj);
  long double v = schur_bialternant(lambdas.back(), params.x);
  prev = Partition();
  for (int k = 0; k < params.q(); ++k) {
    v *= skew_schur_tableau_sum(lambdas[k], prev, params.y[k]);
    prev = lambdas[k];
  }
  return static_cast<double>(v * std::exp(logz));
}

void NormalizationReport::write_csv(std::ostream& os) const {
  os << "weight,partial_mass\n";
  double acc = 0.0;
  char buf[64];
  for (std::size_t w = 0; w < stratum_mass.size(); ++w) {
    acc += stratum_mass[w];
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", w, acc);
    os << buf;
  }
}

namespace {

void partitions_of(int w, int max_part, int max_len, std::vector<int>& cur, std::vector<Partition>& out) {
  if (w == 0) {
    out.emplace_back(cur);
    return;
  }
  if (max_len == 0) return;
  for (int p = std::min(w, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_of(w - p, p, max_len - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

NormalizationReport schur_process_normalization(const SchurProcessParams& params, int max_weight) {
  params.validate();
  if (max_weight < 0) throw std::invalid_argument("schur_process_normalization: negative weight cutoff");
  std::vector<std::vector<Partition>> by_weight(max_weight + 1);
  std::vector<Partition> all;
  for (int w = 0; w <= max_weight; ++w) {
    std::vector<int> cur;
    partitions_of(w, w, params.n, cur, by_weight[w]);
    all.insert(all.end(), by_weight[w].begin(), by_weight[w].end());
  }
  // g_k(lambda) = sum over chains ending in lambda at time k.
  std::map<Partition, long double> g;
  for (const auto& l : all) g[l] = skew_schur_tableau_sum(l, Partition(), params.y[0]);
  for (int k = 1; k < params.q(); ++k) {
    std::map<Partition, long double> next;
    for (const auto& l : all) {
      long double acc = 0.0L;
      for (const auto& [mu, gv] : g)
        if (gv != 0.0L && l.contains(mu)) acc += gv * skew_schur_tableau_sum(l, mu, params.y[k]);
      next[l] = acc;
    }
    g = std::move(next);
  }
  long double logz = 0.0L;
  for (double xi : params.x)
    for (const auto& yk : params.y)
      for (double yj : yk) logz += std::log1p(-static_cast<long double>(xi) * yj);
  NormalizationReport rep;
  rep.stratum_mass.assign(max_weight + 1, 0.0);
  long double mass = 0.0L;
  for (int w = 0; w <= max_weight; ++w) {
    long double sm = 0.0L;
    for (const auto& l : by_weight[w]) sm += g[l] * schur_bialternant(l, params.x);
    sm *= std::exp(logz);
    rep.stratum_mass[w] = static_cast<double>(sm);
    mass += sm;
  }
  rep.mass = static_cast<double>(mass);
  // Total weight is a sum of independent geometric variables.
  std::vector<long double> pmf(max_weight + 1, 0.0L);
  pmf[0] = 1.0L;
  for (double xi : params.x)
    for (const auto& yk : params.y)
      for (double yj : yk) {
        const long double p = static_cast<long double>(xi) * yj;
        std::vector<long double> next(max_weight + 1, 0.0L);
        for (int a = 0; a <= max_weight; ++a) {
          long double pa = 1.0L - p;
          for (int b = 0; a + b <= max_weight; ++b) {
            next[a + b] += pmf[a] * pa;
            pa *= p;
          }
        }
        pmf = std::move(next);
      }
  long double cdf = 0.0L;
  for (long double v : pmf) cdf += v;
  rep.tail = static_cast<double>(1.0L - cdf);
  return rep;
}

double exp_limit_log_normalizer(const ExpLimitParams& params) {
  params.validate();
  const int n = params.n;
  double lz = 0.0;
  for (int j = 1; j <= n; ++j) lz += std::lgamma(static_cast<double>(j));
  for (int k = 1; k <= params.q(); ++k) {
    const int nu = params.nu[k - 1], ell = params.ell[k - 1];
    for (int j = 1; j <= n; ++j) {
      const int shift = k == 1 ? n - j : 0;
      lz += std::lgamma(nu + j - 1.0) + std::lgamma(static_cast<double>(ell - shift)) - std::lgamma(nu + ell + j - 1.0);
    }
  }
  return lz;
}

double exp_limit_density(const ExpLimitParams& params, const std::vector<std::vector<double>>& lambdas) {
  params.validate();
  const int n = params.n, q = params.q();
  if (static_cast<int>(lambdas.size()) != q) throw std::invalid_argument("exp_limit_density: need one vector per time");
  std::vector<std::vector<double>> lam = lambdas;
  for (auto& v : lam) {
    if (static_cast<int>(v.size()) != n) throw std::invalid_argument("exp_limit_density: vectors must have length n");
    for (double c : v)
      if (!(c > 0)) throw std::domain_error("exp_limit_density: coordinates must be positive");
    std::sort(v.begin(), v.end(), std::greater<>());
  }
  for (int k = 1; k < q; ++k)
    for (int i = 0; i < n; ++i)
      if (lam[k - 1][i] > lam[k][i]) return 0.0;

  const double ninf = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> logs(n, std::vector<double>(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) logs[j][k] = -static_cast<double>(j) * lam[q - 1][k];
  auto [total, sign] = log_det_from_logs(logs);

  const std::vector<double> zero(n, 0.0);
  for (int s = 1; s <= q; ++s) {
    const int d = s == 1 ? 1 : 0;
    const double nu = params.nu[s - 1], ell = params.ell[s - 1];
    const double power = ell - 1 - (n - 1) * d;
    const auto& lo = s == 1 ? zero : lam[s - 2];
    const auto& hi = lam[s - 1];
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double a = hi[j], b = lo[k];
        if (!(a > b)) {
          logs[j][k] = ninf;
          continue;
        }
        // log(e^a - e^b) = a + log(1 - e^{b - a})
        const double gap = a + std::log1p(-std::exp(b - a));
        logs[j][k] = (nu + (n - 1) * d) * b - (nu + ell - 1 - (n - (k + 1)) * d) * a + (power == 0 ? 0.0 : power * gap);
      }
    auto [l, sg] = log_det_from_logs(logs);
    total += l;
    sign *= sg;
  }
  if (sign == 0) return 0.0;
  return sign * std::exp(total - exp_limit_log_normalizer(params));
}

namespace {

// Nested integration over the chamber below s at time t, in the order
// lambda^{(t)}_1..n, lambda^{(t-1)}_1..n, ..., lambda^{(1)}_1..n.
double chamber_integral(const ExpLimitParams& params, double s, double tol) {
  const int n = params.n, q = params.q();
  if (n * q > 4) throw std::length_error("exp_limit_marginal_cdf_lambda1: dimension n*q above 4");
  if (!(s > 0)) return 0.0;
  std::vector<std::vector<double>> lam(q, std::vector<double>(n, 0.0));
  const int dims = n * q;
  std::function<double(int)> level = [&](int d) -> double {
    if (d == dims) return exp_limit_density(params, lam);
    const int k = q - 1 - d / n, i = d % n;
    double upper = (k == q - 1) ? s : lam[k + 1][i];
    if (i > 0) upper = std::min(upper, lam[k][i - 1]);
    if (!(upper > 0)) return 0.0;
    std::vector<double> breaks;
    for (int kk = 0; kk < q; ++kk)
      for (int ii = 0; ii < n; ++ii) {
        const int dd = (q - 1 - kk) * n + ii;
        if (dd < d && lam[kk][ii] > 0 && lam[kk][ii] < upper) breaks.push_back(lam[kk][ii]);
      }
    auto f = [&](double v) {
      lam[k][i] = v;
      return level(d + 1);
    };
    const auto r = integrate_adaptive(f, 0.0, upper, tol, tol, 12, breaks);
    return r.value;
  };
  return level(0);
}

}  // namespace

double exp_limit_marginal_cdf_lambda1(const ExpLimitParams& params, int time, double s, double tol) {
  params.validate();
  if (time < 1 || time > params.q()) throw std::out_of_range("exp_limit_marginal_cdf_lambda1: time");
  ExpLimitParams p{params.n, {params.nu.begin(), params.nu.begin() + time},
                   {params.ell.begin(), params.ell.begin() + time}};
  return chamber_integral(p, s, tol);
}

double exp_limit_total_mass(const ExpLimitParams& params, double cutoff, double tol) {
  params.validate();
  return chamber_integral(params, cutoff, tol);
}

}  // namespace perclab
