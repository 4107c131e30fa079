#include "perclab/fredholm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <optional>
#include <stdexcept>

#include "perclab/quadrature.hpp"

namespace perclab {

namespace {

constexpr double kWindowCap = 40.0;
constexpr double kDecay = 1e-10;

struct Window {
  double lo = 0.0, hi = 0.0;
};

std::vector<Window> windows(const FredholmProblem& p, const std::vector<double>& lambda) {
  std::vector<Window> w(p.times.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double s = p.thresholds[j];
    switch (p.kernel->domain()) {
      case ExtendedKernel::Domain::Unit: w[j] = {0.0, std::exp(-s)}; break;
      case ExtendedKernel::Domain::Positive: w[j] = {std::max(s, 0.0), std::max(s, 0.0) + lambda[j]}; break;
      case ExtendedKernel::Domain::Real: w[j] = {s, s + lambda[j]}; break;
    }
  }
  return w;
}

// Barycentric weights of Gauss-Legendre nodes.
std::vector<double> barycentric_weights(const GaussRule& g) {
  std::vector<double> lam(g.nodes.size());
  for (std::size_t k = 0; k < lam.size(); ++k)
    lam[k] = ((k % 2) ? -1.0 : 1.0) * std::sqrt((1.0 - g.nodes[k] * g.nodes[k]) * g.weights[k]);
  return lam;
}

// Lagrange basis values at t (reference coordinates on [-1, 1]).
void lagrange_row(const GaussRule& g, const std::vector<double>& lam, double t, double* out) {
  const std::size_t n = lam.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (t == g.nodes[k]) {
      std::fill(out, out + n, 0.0);
      out[k] = 1.0;
      return;
    }
  }
  double denom = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = lam[k] / (t - g.nodes[k]);
    denom += out[k];
  }
  for (std::size_t k = 0; k < n; ++k) out[k] /= denom;
}

template <class F>
void parallel_rows(bool parallel, int rows, F&& body) {
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int a = 0; a < rows; ++a) {
    try {
      body(a);
    } catch (...) {
#pragma omp critical(perclab_fredholm_err)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void FredholmProblem::validate() const {
  if (!kernel) throw std::invalid_argument("fredholm: kernel missing");
  if (times.empty()) throw std::invalid_argument("fredholm: need at least one time");
  if (thresholds.size() != times.size()) throw std::invalid_argument("fredholm: one threshold per time");
  for (std::size_t j = 1; j < times.size(); ++j)
    if (!(times[j] > times[j - 1])) throw std::invalid_argument("fredholm: times must be strictly increasing");
  for (double s : thresholds)
    if (!std::isfinite(s)) throw std::invalid_argument("fredholm: thresholds must be finite");
  if (!window.empty()) {
    if (window.size() != times.size()) throw std::invalid_argument("fredholm: one window length per time");
    for (double l : window)
      if (!(l > 0)) throw std::invalid_argument("fredholm: window lengths must be positive");
  }
  if (nodes < 2 || max_nodes < nodes) throw std::invalid_argument("fredholm: invalid node counts");
}

std::vector<double> select_windows(const FredholmProblem& p) {
  p.validate();
  if (!p.window.empty()) return p.window;
  std::vector<double> out(p.times.size(), kWindowCap);
  if (p.kernel->domain() == ExtendedKernel::Domain::Unit) return out;
  const double step = 0.25;
  for (std::size_t j = 0; j < p.times.size(); ++j) {
    const double lo = p.kernel->domain() == ExtendedKernel::Domain::Positive ? std::max(p.thresholds[j], 0.0)
                                                                              : p.thresholds[j];
    std::vector<double> xs;
    for (double x = lo + 0.5 * step; x < lo + kWindowCap; x += step) xs.push_back(x);
    const Eigen::MatrixXd K = p.kernel->smooth_block(p.times[j], xs, p.times[j], xs, p.backend);
    std::vector<double> diag(xs.size());
    for (std::size_t a = 0; a < xs.size(); ++a) diag[a] = std::abs(K(a, a));
    const double dmax = *std::max_element(diag.begin(), diag.end());
    std::size_t last = xs.size();
    while (last > 0 && diag[last - 1] < kDecay * dmax) --last;
    if (last < xs.size()) out[j] = std::min(kWindowCap, xs[last] - lo + step);
  }
  return out;
}

namespace {

struct Panel {
  double lo = 0.0, hi = 0.0;
  int offset = 0;  // first node index within the slice
};

struct Slice {
  std::vector<Panel> panels;
  std::vector<double> x, w;
};

// The first term's kink y*(x) is affine in x; returns (slope, intercept).
std::optional<std::pair<double, double>> kink_map(const ExtendedKernel& k, double q, double r, double probe) {
  const auto y1 = k.breakpoint(q, probe, r), y2 = k.breakpoint(q, 2.0 * probe, r);
  if (!y1 || !y2) return std::nullopt;
  const double slope = (*y2 - *y1) / probe;
  return std::make_pair(slope, *y1 - slope * probe);
}

// Panels split where kinks of other slices reach a window edge: the solution
// is only piecewise smooth across those points.
std::vector<Slice> build_slices(const FredholmProblem& p, const std::vector<Window>& win, int nodes) {
  const int T = static_cast<int>(win.size());
  const GaussRule& g = gauss_legendre(nodes);
  std::vector<Slice> out(T);
  for (int j = 0; j < T; ++j) {
    const double lo = win[j].lo, hi = win[j].hi;
    std::vector<double> cuts{lo, hi};
    auto add = [&](double c) {
      if (c > lo + 1e-3 * (hi - lo) && c < hi - 1e-3 * (hi - lo)) cuts.push_back(c);
    };
    const double probe = std::max(0.5 * (lo + hi), 1e-3);
    for (int k = 0; k < T; ++k) {
      if (k > j) {
        if (const auto m = kink_map(*p.kernel, p.times[j], p.times[k], probe); m && m->first != 0.0) {
          add((win[k].lo - m->second) / m->first);
          add((win[k].hi - m->second) / m->first);
        }
      } else if (k < j) {
        if (const auto m = kink_map(*p.kernel, p.times[k], p.times[j], std::max(0.5 * (win[k].lo + win[k].hi), 1e-3))) {
          add(m->first * win[k].lo + m->second);
          add(m->first * win[k].hi + m->second);
        }
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    Slice& sl = out[j];
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      sl.panels.push_back({cuts[c], cuts[c + 1], static_cast<int>(sl.x.size())});
      const double mid = 0.5 * (cuts[c] + cuts[c + 1]), half = 0.5 * (cuts[c + 1] - cuts[c]);
      for (int k = 0; k < nodes; ++k) {
        sl.x.push_back(mid + half * g.nodes[k]);
        sl.w.push_back(half * g.weights[k]);
      }
    }
  }
  return out;
}

}  // namespace

Eigen::MatrixXd nystrom_matrix(const FredholmProblem& p, int nodes) {
  p.validate();
  const std::vector<Window> win = windows(p, select_windows(p));
  const int T = static_cast<int>(p.times.size());
  const GaussRule& g = gauss_legendre(nodes);
  const std::vector<double> lam = barycentric_weights(g);
  const int fine = nodes + 32;
  const GaussRule& gf = gauss_legendre(fine);
  const std::vector<Slice> sl = build_slices(p, win, nodes);

  std::vector<int> off(T + 1, 0);
  for (int j = 0; j < T; ++j) off[j + 1] = off[j] + static_cast<int>(sl[j].x.size());
  Eigen::MatrixXd M(off[T], off[T]);
  for (int j = 0; j < T; ++j) {
    for (int k = 0; k < T; ++k) {
      const std::vector<double>&xj = sl[j].x, &xk = sl[k].x;
      const int na = static_cast<int>(xj.size()), nb = static_cast<int>(xk.size());
      Eigen::MatrixXd S = p.kernel->smooth_block(p.times[j], xj, p.times[k], xk, p.backend);
      Eigen::MatrixXd W = Eigen::MatrixXd::Zero(na, nb);
      if (k > j) {
        const double tj = p.times[j], tk = p.times[k];
        parallel_rows(p.parallel, na, [&](int a) {
          const std::optional<double> brk = p.kernel->breakpoint(tj, xj[a], tk);
          if (!brk) {
            for (int b = 0; b < nb; ++b) S(a, b) += p.kernel->first_term(tj, xj[a], tk, xk[b], p.backend);
            return;
          }
          // Product integration of the first term against each panel's Lagrange basis, split at the kink.
          std::vector<double> row(nodes);
          for (const Panel& pan : sl[k].panels) {
            const double mid = 0.5 * (pan.lo + pan.hi), half = 0.5 * (pan.hi - pan.lo);
            std::vector<std::pair<double, double>> pieces;
            if (*brk > pan.lo && *brk < pan.hi) pieces = {{pan.lo, *brk}, {*brk, pan.hi}};
            else pieces = {{pan.lo, pan.hi}};
            for (const auto& [a0, b0] : pieces) {
              const double m = 0.5 * (a0 + b0), h = 0.5 * (b0 - a0);
              for (int q = 0; q < fine; ++q) {
                const double y = m + h * gf.nodes[q];
                const double f = p.kernel->first_term(tj, xj[a], tk, y, p.backend);
                if (f == 0.0) continue;
                lagrange_row(g, lam, (y - mid) / half, row.data());
                for (int b = 0; b < nodes; ++b) W(a, pan.offset + b) += h * gf.weights[q] * f * row[b];
              }
            }
          }
        });
      }
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) {
          const double wa = sl[j].w[a], wb = sl[k].w[b];
          M(off[j] + a, off[k] + b) = std::sqrt(wa * wb) * S(a, b) + std::sqrt(wa / wb) * W(a, b);
        }
    }
  }
  return M;
}

namespace {

struct Discrete {
  double value = 0.0;
  double rcond = 0.0;
};

Discrete fredholm_det(const Eigen::MatrixXd& M) {
  const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(M.rows(), M.cols()) - M;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  return {lu.determinant(), lu.rcond()};
}

double minor_series(const Eigen::MatrixXd& M, int m_max) {
  const double t1 = M.trace();
  const Eigen::MatrixXd M2 = M * M;
  const double t2 = M2.trace();
  const double t3 = m_max >= 3 ? (M2 * M).trace() : 0.0;
  const double e1 = t1;
  const double e2 = 0.5 * (t1 * t1 - t2);
  const double e3 = (t1 * t1 * t1 - 3.0 * t1 * t2 + 2.0 * t3) / 6.0;
  double v = 1.0;
  if (m_max >= 1) v -= e1;
  if (m_max >= 2) v += e2;
  if (m_max >= 3) v -= e3;
  return v;
}

template <class Eval>
GapResult doubling(const FredholmProblem& p, int start, int cap, double tol, Eval&& eval) {
  const auto t0 = std::chrono::steady_clock::now();
  GapResult r;
  const std::vector<double> lambda = select_windows(p);
  FredholmProblem fixed = p;
  fixed.window = lambda;
  for (const Window& w : windows(p, lambda)) {
    r.window_lo.push_back(w.lo);
    r.window_hi.push_back(w.hi);
  }
  Discrete prev = eval(fixed, start);
  for (int n = 2 * start; n <= cap; n *= 2) {
    const Discrete cur = eval(fixed, n);
    r.value = cur.value;
    r.rcond = cur.rcond;
    r.nodes = n;
    r.est_error = std::abs(cur.value - prev.value);
    if (r.est_error < tol) {
      r.converged = true;
      r.runtime_ms = elapsed_ms(t0);
      return r;
    }
    prev = cur;
  }
  throw std::runtime_error("fredholm: node doubling did not converge (last difference " +
                           std::to_string(r.est_error) + ")");
}

}  // namespace

GapResult nystrom_gap_probability(const FredholmProblem& p, double cauchy_tol) {
  p.validate();
  return doubling(p, p.nodes, p.max_nodes, cauchy_tol,
                  [](const FredholmProblem& q, int n) { return fredholm_det(nystrom_matrix(q, n)); });
}

GapResult series_gap_probability(const FredholmProblem& p, int m_max, double cauchy_tol) {
  p.validate();
  if (m_max < 0 || m_max > 3) throw std::invalid_argument("series: m_max must lie in 0..3");
  if (m_max == 0) {
    GapResult r;
    r.value = 1.0;
    r.converged = true;
    return r;
  }
  // Offset node ladder so the series does not reuse the determinant's discretization.
  const int start = p.nodes + 16;
  return doubling(p, start, std::max(p.max_nodes, 4 * start), cauchy_tol, [m_max](const FredholmProblem& q, int n) {
    return Discrete{minor_series(nystrom_matrix(q, n), m_max), 0.0};
  });
}

GapResult critical_fidi(const std::vector<double>& times, const std::vector<double>& thresholds, Backend b,
                        double cauchy_tol) {
  FredholmProblem p;
  p.kernel = make_critical();
  p.times = times;
  p.thresholds = thresholds;
  p.backend = b;
  if (times.empty() || times.front() <= 0) throw std::invalid_argument("critical_fidi: times must be positive");
  return nystrom_gap_probability(p, cauchy_tol);
}

}  // namespace perclab
