#include "perclab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "perclab/kernel_detail.hpp"
#include "perclab/meijer.hpp"
#include "perclab/quadrature.hpp"

namespace perclab {

const char* backend_name(Backend b) { return b == Backend::Quadrature ? "quadrature" : "residue"; }

const char* kernel_name(KernelId id) {
  switch (id) {
    case KernelId::TruncatedUnitaryLog: return "truncated-unitary-log";
    case KernelId::TruncatedUnitaryMult: return "truncated-unitary-mult";
    case KernelId::Ginibre: return "ginibre";
    case KernelId::HardEdge: return "hard-edge";
    case KernelId::Critical: return "critical";
    case KernelId::ScaledCritical: return "scaled-critical";
    case KernelId::ScaledHardEdgeTU: return "scaled-hard-edge-tu";
    case KernelId::ScaledHardToSoft: return "scaled-hard-to-soft";
  }
  return "unknown";
}

bool PoleSet::finite() const {
  for (int c : count)
    if (c == 0) return false;
  return true;
}

double PoleSet::extreme() const {
  if (!finite() || empty()) throw std::logic_error("PoleSet::extreme: unbounded or empty pole set");
  double e = start[0] + step * (count[0] - 1);
  for (std::size_t j = 1; j < start.size(); ++j) {
    const double v = start[j] + step * (count[j] - 1);
    e = step < 0 ? std::min(e, v) : std::max(e, v);
  }
  return e;
}

namespace detail {

cplx log_rising(cplx z, double a, int count) {
  if (count <= 0) return 0.0;
  if (count > 12) return log_gamma(z + a + static_cast<double>(count)) - log_gamma(z + a);
  cplx p = 1.0;
  for (int m = 0; m < count; ++m) p *= z + a + static_cast<double>(m);
  return std::log(p);
}

cplx log_gamma_sum(cplx z, const std::vector<int>& nu, int upto) {
  std::map<int, int> mult;
  for (int j = 0; j < upto; ++j) ++mult[nu[j]];
  cplx acc = 0.0;
  for (const auto& [v, m] : mult) acc += static_cast<double>(m) * log_gamma(z + static_cast<double>(v));
  return acc;
}

int integer_time(double t, int max_time) {
  const double r = std::round(t);
  if (std::abs(t - r) > 1e-12 || r < 1 || r > max_time)
    throw std::out_of_range("kernel: time index must be an integer in [1, K]");
  return static_cast<int>(r);
}

}  // namespace detail

namespace {

constexpr double kCircleRadius = 0.25;

class PoleWalker {
 public:
  explicit PoleWalker(const PoleSet& s) : s_(s), next_(s.start.size(), 0) {}
  std::optional<double> pop() {
    std::optional<double> best;
    for (std::size_t j = 0; j < s_.start.size(); ++j) {
      if (s_.count[j] != 0 && next_[j] >= s_.count[j]) continue;
      const double p = s_.start[j] + s_.step * next_[j];
      if (!best || (s_.step < 0 ? p > *best : p < *best)) best = p;
    }
    if (!best) return best;
    for (std::size_t j = 0; j < s_.start.size(); ++j) {
      if (s_.count[j] != 0 && next_[j] >= s_.count[j]) continue;
      if (std::abs(s_.start[j] + s_.step * next_[j] - *best) < 1e-9) ++next_[j];
    }
    return best;
  }

 private:
  const PoleSet& s_;
  std::vector<int> next_;
};

using LogFn = std::function<cplx(cplx)>;

double finite_or(double v, double fallback) { return std::isfinite(v) ? v : fallback; }

// Trapezoid circle sized from the variation of log|f e^{kappa z}| across it.
void add_circle(SideNodes& out, const LogFn& logf, double center, double radius, double kappa_abs, int level) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (cplx d : {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)}) {
    const double v = logf(center + radius * d).real();
    if (!std::isfinite(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double var = (hi > lo ? hi - lo : 0.0) + 2.0 * kappa_abs * radius;
  const int nodes = (32 * static_cast<int>(std::ceil((1.5 * var + 48.0) / 32.0))) << level;
  const NodeSet s = circle_nodes(center, radius, nodes);
  for (std::size_t k = 0; k < s.size(); ++k) {
    out.z.push_back(s.z[k]);
    out.lw.push_back(std::log(s.w[k]) + logf(s.z[k]));
  }
}

// Largest |d/dz log f| sampled along a segment (branch-safe difference quotient).
double log_derivative_bound(const LogFn& logf, cplx a, cplx b) {
  const double len = std::abs(b - a);
  const int samples = std::max(2, static_cast<int>(std::ceil(len / 0.5)) + 1);
  const cplx dir = (b - a) / len;
  const double h = 1e-4;
  double best = 0.0;
  for (int k = 0; k < samples; ++k) {
    const cplx z = a + (b - a) * (static_cast<double>(k) / (samples - 1));
    const cplx d = logf(z + h * dir) - logf(z - h * dir);
    if (!std::isfinite(d.real()) || !std::isfinite(d.imag())) continue;
    const cplx wrapped = std::log(std::exp(d));
    best = std::max(best, std::abs(wrapped) / (2.0 * h));
  }
  return best;
}

void add_segments(SideNodes& out, const LogFn& logf, const Contour& c, double kappa_abs, int level) {
  for (const auto& [a, b] : contour_segments(c)) {
    const double D = log_derivative_bound(logf, a, b) + kappa_abs;
    const double panel = std::min(c.panel_length, 8.0 / std::max(D, 1e-12)) / std::ldexp(1.0, level);
    const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / panel - 1e-9)));
    const NodeSet s = segment_nodes(a, b, panels, 16);
    for (std::size_t k = 0; k < s.size(); ++k) {
      out.z.push_back(s.z[k]);
      out.lw.push_back(std::log(s.w[k]) + logf(s.z[k]));
    }
  }
}

SideNodes build_side(const LogFn& logf, const SideShape& shape, bool sigma, Backend backend, int level,
                     double kappa_min, double kappa_max, const KernelOptions& opt, double zeta_clip) {
  SideNodes out;
  const double kappa_worst = sigma ? kappa_min : kappa_max;
  const double kappa_abs = std::max(std::abs(kappa_min), std::abs(kappa_max));
  auto log_mag = [&](cplx z) { return finite_or(logf(z).real() + kappa_worst * z.real(), -1e300); };

  if (backend == Backend::Residue && !shape.poles.empty()) {
    const double radius = std::min(kCircleRadius, zeta_clip);
    PoleWalker walk(shape.poles);
    const bool bounded = shape.poles.finite();
    int total = 0;
    if (bounded)
      for (int c : shape.poles.count) total += c;
    const bool small = bounded && total <= 64;
    double smax = 0.0, prev = std::numeric_limits<double>::infinity();
    int quiet = 0, used = 0;
    while (auto p = walk.pop()) {
      if (++used > 500) throw std::runtime_error("kernel residue series: tail bound not reached within 500 poles");
      const std::size_t before = out.size();
      add_circle(out, logf, *p, radius, kappa_abs, level);
      if (small) continue;
      double s = 0.0;
      for (std::size_t k = before; k < out.size(); ++k) s += std::exp(out.lw[k].real() + kappa_worst * out.z[k].real());
      smax = std::max(smax, s);
      quiet = (s <= opt.tol * smax && s <= prev) ? quiet + 1 : 0;
      prev = s;
      if (quiet >= 3) {
        out.truncation = {std::abs(*p), s / std::max(smax, 1e-300), false};
        break;
      }
    }
    if (bounded && quiet < 3) out.truncation = {0.0, 0.0, true};
    return out;
  }

  // Power tails cannot reach the exponential-family tolerance within the cap.
  const double tol = shape.decay.kind == DecayKind::Power ? std::max(opt.tol, 1e-12) : opt.tol;
  Contour c;
  switch (shape.kind) {
    case SideKind::Closed: {
      const double left = -std::min(kZetaLeft * opt.perturb, zeta_clip);
      double lo = shape.poles.start[0], hi = shape.poles.extreme();
      if (lo > hi) std::swap(lo, hi);
      c = box_contour(lo + left, hi + kZetaMargin * opt.perturb, kHeight * opt.perturb);
      c.truncation.closed = true;
      break;
    }
    case SideKind::LeftOpen: {
      std::optional<double> close;
      if (!shape.poles.empty() && shape.poles.finite()) close = shape.poles.extreme();
      c = sigma_left_open(log_mag, shape.decay, tol, opt.cap, opt.perturb, close);
      break;
    }
    case SideKind::RightOpen: {
      c = zeta_right_open(log_mag, shape.decay, tol, opt.cap, opt.perturb);
      c.left = -std::min(kZetaLeft * opt.perturb, zeta_clip);
      break;
    }
    case SideKind::Vertical: {
      c = vertical_line(opt.sigma_abscissa, log_mag, shape.decay, tol, opt.cap);
      break;
    }
  }
  add_segments(out, logf, c, kappa_abs, level);
  out.truncation = c.truncation;
  return out;
}

}  // namespace

namespace detail {

double saddle_line_integral(const std::function<cplx(cplx)>& logf, double left_limit, DecayModel decay,
                            const KernelOptions& opt, int level) {
  auto phi = [&](double u) { return finite_or(logf(cplx(u, 0.0)).real(), 1e300); };
  const double lo = left_limit + 0.25;
  double hi = lo + 1.0;
  while (phi(hi) < phi(hi - 0.5) && hi - lo < 1e4) hi = lo + 2.0 * (hi - lo);
  double a = lo, b = hi;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 80 && b - a > 1e-6; ++it) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (phi(c) < phi(d)) b = d;
    else a = c;
  }
  KernelOptions o = opt;
  o.sigma_abscissa = 0.5 * (a + b);
  const SideNodes s = build_side(logf, {SideKind::Vertical, {}, decay}, true, Backend::Quadrature, level, 0.0, 0.0,
                                 o, std::numeric_limits<double>::infinity());
  cplx acc = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) acc += std::exp(s.lw[k]);
  return acc.real();
}

}  // namespace detail

double ExtendedKernel::log_extra(double, double) const { return 0.0; }

std::optional<double> ExtendedKernel::breakpoint(double, double, double) const { return std::nullopt; }

SideNodes ExtendedKernel::sigma_nodes(double r, Backend b, int level, double kappa_min, double kappa_max) const {
  const SideShape shape = sigma_shape(r);
  return build_side([&](cplx s) { return log_a(r, s); }, shape, true, b, level, kappa_min, kappa_max, opt_,
                    std::numeric_limits<double>::infinity());
}

SideNodes ExtendedKernel::zeta_nodes(double q, Backend b, int level, double kappa_min, double kappa_max) const {
  const SideShape shape = zeta_shape(q);
  double clip = std::numeric_limits<double>::infinity();
  if (sigma_shape(q).kind == SideKind::Vertical) clip = 0.5 * std::abs(opt_.sigma_abscissa);
  return build_side([&](cplx z) { return log_b(q, z); }, shape, false, b, level, kappa_min, kappa_max, opt_, clip);
}

double ExtendedKernel::double_integral(double q, double x, double r, double y, Backend b, int level) const {
  check_args(q, x, r, y);
  const double X = coupling_x(q, x), Y = coupling_y(r, y), E = log_extra(r, y);
  const SideNodes zs = zeta_nodes(q, b, level, -X, -X);
  const SideNodes ss = sigma_nodes(r, b, level, Y, Y);
  std::vector<cplx> bz(zs.size()), as(ss.size());
  for (std::size_t k = 0; k < zs.size(); ++k) bz[k] = std::exp(zs.lw[k] - X * zs.z[k]);
  for (std::size_t k = 0; k < ss.size(); ++k) as[k] = std::exp(ss.lw[k] + Y * ss.z[k] + E);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    cplx inner = 0.0;
    for (std::size_t k = 0; k < ss.size(); ++k) inner += as[k] / (ss.z[k] - zs.z[i]);
    acc += bz[i] * inner;
  }
  return acc.real();
}

double ExtendedKernel::evaluate(double q, double x, double r, double y, Backend b, int level) const {
  return first_term(q, x, r, y, b) + double_integral(q, x, r, y, b, level);
}

KernelValue ExtendedKernel::operator()(double q, double x, double r, double y, Backend b) const {
  const double first = first_term(q, x, r, y, b);
  const double v0 = double_integral(q, x, r, y, b, 0);
  const double v1 = double_integral(q, x, r, y, b, 1);
  return {first + v1, b, std::abs(v1 - v0) + 1e-15 * std::abs(first + v1)};
}

KernelValue ExtendedKernel::checked(double q, double x, double r, double y, double rel_tol) const {
  const KernelValue a = (*this)(q, x, r, y, Backend::Quadrature);
  const KernelValue c = (*this)(q, x, r, y, Backend::Residue);
  const double scale = std::max(std::abs(a.value), std::abs(c.value));
  if (std::abs(a.value - c.value) > rel_tol * scale + a.est_error + c.est_error) {
    std::ostringstream os;
    os.precision(17);
    os << "kernel backends disagree at (" << q << ", " << x << "; " << r << ", " << y << "): " << a.value << " vs "
       << c.value;
    throw std::runtime_error(os.str());
  }
  return {c.value, Backend::Residue, std::abs(a.value - c.value) + c.est_error};
}

Eigen::MatrixXd ExtendedKernel::smooth_block(double q, const std::vector<double>& xs, double r,
                                             const std::vector<double>& ys, Backend b, int level) const {
  if (xs.empty() || ys.empty()) return Eigen::MatrixXd(xs.size(), ys.size());
  std::vector<double> X(xs.size()), Y(ys.size()), E(ys.size());
  for (std::size_t a = 0; a < xs.size(); ++a) {
    check_args(q, xs[a], r, ys[0]);
    X[a] = coupling_x(q, xs[a]);
  }
  for (std::size_t c = 0; c < ys.size(); ++c) {
    check_args(q, xs[0], r, ys[c]);
    Y[c] = coupling_y(r, ys[c]);
    E[c] = log_extra(r, ys[c]);
  }
  const auto [xmin, xmax] = std::minmax_element(X.begin(), X.end());
  const auto [ymin, ymax] = std::minmax_element(Y.begin(), Y.end());
  const SideNodes zs = zeta_nodes(q, b, level, -*xmax, -*xmin);
  const SideNodes ss = sigma_nodes(r, b, level, *ymin, *ymax);
  const Eigen::Index nz = zs.size(), ns = ss.size();
  Eigen::MatrixXcd Bx(xs.size(), nz), C(nz, ns), Ay(ns, ys.size());
  for (std::size_t a = 0; a < xs.size(); ++a)
    for (Eigen::Index k = 0; k < nz; ++k) Bx(a, k) = std::exp(zs.lw[k] - X[a] * zs.z[k]);
  for (Eigen::Index i = 0; i < nz; ++i)
    for (Eigen::Index k = 0; k < ns; ++k) C(i, k) = 1.0 / (ss.z[k] - zs.z[i]);
  for (Eigen::Index k = 0; k < ns; ++k)
    for (std::size_t c = 0; c < ys.size(); ++c) Ay(k, c) = std::exp(ss.lw[k] + Y[c] * ss.z[k] + E[c]);
  const Eigen::MatrixXcd K = Bx * (C * Ay);
  return K.real();
}

namespace {

using detail::integer_time;
using detail::log_gamma_sum;
using detail::log_rising;

void check_nu(const std::vector<int>& nu) {
  if (nu.empty()) throw std::invalid_argument("kernel: nu must be nonempty");
  for (int v : nu)
    if (v < 1) throw std::invalid_argument("kernel: nu_k must be at least 1");
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

double first_kk(const MeijerKK& g, double z, Backend b, double log_scale) {
  return b == Backend::Residue ? meijer_g_residues(g, z, log_scale)
                               : meijer_g_contour(g, z, MeijerPath::Closed, 1e-10, log_scale);
}

double first_0k(const Meijer0K& g, double z, Backend b, double log_scale) {
  return b == Backend::Residue ? meijer_g_residues(g, z, log_scale) : meijer_g_contour(g, z, log_scale);
}

// Shared structure of the two truncated-unitary kernels.
class TruncatedUnitary : public ExtendedKernel {
 public:
  TruncatedUnitary(int n, std::vector<int> nu, std::vector<int> ell, KernelOptions opt)
      : ExtendedKernel(opt), n_(n), nu_(std::move(nu)), ell_(std::move(ell)) {
    check_nu(nu_);
    if (n_ < 1) throw std::invalid_argument("kernel: n must be positive");
    if (nu_.size() != ell_.size()) throw std::invalid_argument("kernel: nu and ell must have equal length");
    if (ell_[0] < n_) throw std::invalid_argument("kernel: ell_1 must be at least n");
    for (int l : ell_)
      if (l < 1) throw std::invalid_argument("kernel: ell_k must be positive");
  }
  std::string parameters() const override {
    return "n=" + std::to_string(n_) + " nu=" + join(nu_) + " ell=" + join(ell_);
  }
  cplx log_a(double r, cplx s) const override {
    const int R = integer_time(r, K());
    cplx acc = log_rising(s, 1.0 - n_, n_);
    for (int j = 0; j < R; ++j) acc -= log_rising(s, nu_[j], ell_[j]);
    return acc;
  }
  cplx log_b(double q, cplx z) const override {
    const int Q = integer_time(q, K());
    cplx acc = -log_rising(z, 1.0 - n_, n_);
    for (int j = 0; j < Q; ++j) acc += log_rising(z, nu_[j], ell_[j]);
    return acc;
  }
  SideShape sigma_shape(double r) const override {
    const int R = integer_time(r, K());
    SideShape s{SideKind::LeftOpen, {}, {DecayKind::Exponential, 0.0}};
    s.poles.step = -1.0;
    for (int j = 0; j < R; ++j) {
      s.poles.start.push_back(-nu_[j]);
      s.poles.count.push_back(ell_[j]);
    }
    return s;
  }
  SideShape zeta_shape(double) const override {
    return {SideKind::Closed, {{0.0}, {n_}, 1.0}, {DecayKind::Exponential, 0.0}};
  }
  std::optional<double> breakpoint(double q, double x, double r) const override {
    if (r > q) return x;
    return std::nullopt;
  }

 protected:
  int K() const { return static_cast<int>(nu_.size()); }
  MeijerKK meijer(int Q, int R, double shift) const {
    MeijerKK g;
    for (int j = Q; j < R; ++j) {
      g.b.push_back(nu_[j] + shift);
      g.ell.push_back(ell_[j]);
    }
    return g;
  }
  int n_;
  std::vector<int> nu_, ell_;
};

class TruncatedUnitaryLog final : public TruncatedUnitary {
 public:
  using TruncatedUnitary::TruncatedUnitary;
  KernelId id() const override { return KernelId::TruncatedUnitaryLog; }
  Domain domain() const override { return Domain::Positive; }
  double coupling_x(double, double x) const override { return x; }
  double coupling_y(double, double y) const override { return y; }
  double first_term(double q, double x, double r, double y, Backend b) const override {
    check_args(q, x, r, y);
    const int Q = integer_time(q, K()), R = integer_time(r, K());
    if (R <= Q) return 0.0;
    return -first_kk(meijer(Q, R, 0.0), std::exp(x - y), b, 0.0);
  }

 protected:
  void check_args(double q, double x, double r, double y) const override {
    integer_time(q, K());
    integer_time(r, K());
    if (!(x > 0) || !(y > 0)) throw std::domain_error("truncated-unitary-log kernel: x, y must be positive");
  }
};

class TruncatedUnitaryMult final : public TruncatedUnitary {
 public:
  using TruncatedUnitary::TruncatedUnitary;
  KernelId id() const override { return KernelId::TruncatedUnitaryMult; }
  Domain domain() const override { return Domain::Unit; }
  double coupling_x(double, double x) const override { return -std::log(x); }
  double coupling_y(double, double y) const override { return -std::log(y); }
  double log_extra(double, double y) const override { return -std::log(y); }
  double first_term(double q, double x, double r, double y, Backend b) const override {
    check_args(q, x, r, y);
    const int Q = integer_time(q, K()), R = integer_time(r, K());
    if (R <= Q) return 0.0;
    return -first_kk(meijer(Q, R, -1.0), y / x, b, -std::log(x));
  }

 protected:
  void check_args(double q, double x, double r, double y) const override {
    integer_time(q, K());
    integer_time(r, K());
    if (!(x > 0 && x < 1) || !(y > 0 && y < 1))
      throw std::domain_error("truncated-unitary-mult kernel: x, y must lie in (0, 1)");
  }
};

class Ginibre final : public ExtendedKernel {
 public:
  Ginibre(int n, std::vector<int> nu, KernelOptions opt) : ExtendedKernel(opt), n_(n), nu_(std::move(nu)) {
    check_nu(nu_);
    if (n_ < 1) throw std::invalid_argument("kernel: n must be positive");
  }
  KernelId id() const override { return KernelId::Ginibre; }
  std::string parameters() const override { return "n=" + std::to_string(n_) + " nu=" + join(nu_); }
  Domain domain() const override { return Domain::Positive; }
  double coupling_x(double, double x) const override { return -std::log(x); }
  double coupling_y(double, double y) const override { return -std::log(y); }
  double log_extra(double, double y) const override { return -std::log(y); }
  cplx log_a(double r, cplx s) const override {
    return log_rising(s, 1.0 - n_, n_) + log_gamma_sum(s, nu_, integer_time(r, K()));
  }
  cplx log_b(double q, cplx z) const override {
    return -log_rising(z, 1.0 - n_, n_) - log_gamma_sum(z, nu_, integer_time(q, K()));
  }
  SideShape sigma_shape(double r) const override {
    const int R = integer_time(r, K());
    SideShape s{SideKind::LeftOpen, {}, {DecayKind::Exponential, 0.0}};
    s.poles.step = -1.0;
    for (int j = 0; j < R; ++j) {
      s.poles.start.push_back(-nu_[j]);
      s.poles.count.push_back(0);
    }
    return s;
  }
  SideShape zeta_shape(double) const override {
    return {SideKind::Closed, {{0.0}, {n_}, 1.0}, {DecayKind::Exponential, 0.0}};
  }
  double first_term(double q, double x, double r, double y, Backend b) const override {
    check_args(q, x, r, y);
    const int Q = integer_time(q, K()), R = integer_time(r, K());
    if (R <= Q) return 0.0;
    Meijer0K g;
    for (int j = Q; j < R; ++j) g.b.push_back(nu_[j] - 1.0);
    return -first_0k(g, y / x, b, -std::log(x));
  }

 protected:
  void check_args(double q, double x, double r, double y) const override {
    integer_time(q, K());
    integer_time(r, K());
    if (!(x > 0) || !(y > 0)) throw std::domain_error("ginibre kernel: x, y must be positive");
  }
  int K() const { return static_cast<int>(nu_.size()); }
  int n_;
  std::vector<int> nu_;
};

class HardEdge final : public ExtendedKernel {
 public:
  HardEdge(std::vector<int> nu, KernelOptions opt) : ExtendedKernel(opt), nu_(std::move(nu)) { check_nu(nu_); }
  KernelId id() const override { return KernelId::HardEdge; }
  std::string parameters() const override { return "nu=" + join(nu_); }
  Domain domain() const override { return Domain::Positive; }
  double coupling_x(double, double x) const override { return -std::log(x); }
  double coupling_y(double, double y) const override { return -std::log(y); }
  double log_extra(double, double y) const override { return -std::log(y); }
  cplx log_a(double r, cplx s) const override {
    return log_gamma_sum(s, nu_, integer_time(r, K())) + log_rgamma(-s);
  }
  cplx log_b(double q, cplx z) const override {
    return log_gamma(-z) - log_gamma_sum(z, nu_, integer_time(q, K()));
  }
  SideShape sigma_shape(double r) const override {
    const int R = integer_time(r, K());
    SideShape s{SideKind::LeftOpen, {}, {DecayKind::Exponential, 0.0}};
    s.poles.step = -1.0;
    for (int j = 0; j < R; ++j) {
      s.poles.start.push_back(-nu_[j]);
      s.poles.count.push_back(0);
    }
    return s;
  }
  SideShape zeta_shape(double) const override {
    return {SideKind::RightOpen, {{0.0}, {0}, 1.0}, {DecayKind::Exponential, 0.0}};
  }
  double first_term(double q, double x, double r, double y, Backend b) const override {
    check_args(q, x, r, y);
    const int Q = integer_time(q, K()), R = integer_time(r, K());
    if (R <= Q) return 0.0;
    Meijer0K g;
    for (int j = Q; j < R; ++j) g.b.push_back(nu_[j] - 1.0);
    return -first_0k(g, y / x, b, -std::log(x));
  }

 protected:
  void check_args(double q, double x, double r, double y) const override {
    integer_time(q, K());
    integer_time(r, K());
    if (!(x > 0) || !(y > 0)) throw std::domain_error("hard-edge kernel: x, y must be positive");
  }
  int K() const { return static_cast<int>(nu_.size()); }
  std::vector<int> nu_;
};

class Critical final : public ExtendedKernel {
 public:
  explicit Critical(KernelOptions opt) : ExtendedKernel(opt) {}
  KernelId id() const override { return KernelId::Critical; }
  std::string parameters() const override { return ""; }
  Domain domain() const override { return Domain::Real; }
  double coupling_x(double, double x) const override { return x; }
  double coupling_y(double, double y) const override { return y; }
  cplx log_a(double t, cplx s) const override { return 0.5 * t * s * s + log_rgamma(-s); }
  cplx log_b(double tau, cplx z) const override { return log_gamma(-z) - 0.5 * tau * z * z; }
  SideShape sigma_shape(double) const override { return {SideKind::Vertical, {}, {DecayKind::Gaussian, 0.0}}; }
  SideShape zeta_shape(double) const override {
    return {SideKind::RightOpen, {{0.0}, {0}, 1.0}, {DecayKind::Gaussian, 0.0}};
  }
  double first_term(double tau, double x, double t, double y, Backend) const override {
    check_args(tau, x, t, y);
    if (!(t > tau)) return 0.0;
    const double d = t - tau;
    return -std::exp(-0.5 * (x - y) * (x - y) / d) / std::sqrt(2.0 * std::numbers::pi * d);
  }

 protected:
  void check_args(double tau, double x, double t, double y) const override {
    if (!(tau > 0) || !(t > 0)) throw std::domain_error("critical kernel: times must be positive");
    if (!std::isfinite(x) || !std::isfinite(y)) throw std::domain_error("critical kernel: x, y must be finite");
  }
};

}  // namespace

KernelPtr make_truncated_unitary_log(int n, std::vector<int> nu, std::vector<int> ell, KernelOptions opt) {
  return std::make_shared<TruncatedUnitaryLog>(n, std::move(nu), std::move(ell), opt);
}
KernelPtr make_truncated_unitary_mult(int n, std::vector<int> nu, std::vector<int> ell, KernelOptions opt) {
  return std::make_shared<TruncatedUnitaryMult>(n, std::move(nu), std::move(ell), opt);
}
KernelPtr make_ginibre(int n, std::vector<int> nu, KernelOptions opt) {
  return std::make_shared<Ginibre>(n, std::move(nu), opt);
}
KernelPtr make_hard_edge(std::vector<int> nu, KernelOptions opt) {
  return std::make_shared<HardEdge>(std::move(nu), opt);
}
KernelPtr make_critical(KernelOptions opt) { return std::make_shared<Critical>(opt); }

KernelValue k_truncated_unitary_log(int n, const std::vector<int>& nu, const std::vector<int>& ell, int q, double x,
                                    int r, double y, Backend b) {
  return (*make_truncated_unitary_log(n, nu, ell))(q, x, r, y, b);
}
KernelValue k_truncated_unitary_mult(int n, const std::vector<int>& nu, const std::vector<int>& ell, int q, double x,
                                     int r, double y, Backend b) {
  return (*make_truncated_unitary_mult(n, nu, ell))(q, x, r, y, b);
}
KernelValue k_ginibre(int n, const std::vector<int>& nu, int q, double x, int r, double y, Backend b) {
  return (*make_ginibre(n, nu))(q, x, r, y, b);
}
KernelValue k_hard_edge(const std::vector<int>& nu, int q, double x, int r, double y, Backend b) {
  return (*make_hard_edge(nu))(q, x, r, y, b);
}
KernelValue k_critical(double tau, double x, double t, double y, Backend b) {
  return (*make_critical())(tau, x, t, y, b);
}

}  // namespace perclab
