#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "perclab/env.hpp"
#include "perclab/kernel_detail.hpp"
#include "perclab/kernels.hpp"
#include "perclab/meijer.hpp"

namespace perclab {

int scaled_time(double t, int nu) {
  if (!(t > 0)) throw std::domain_error("scaled kernel: time must be positive");
  const double v = std::floor(t * nu + 1e-12);
  if (v < 1) throw std::domain_error("scaled kernel: [t nu] must be at least 1");
  return static_cast<int>(v);
}

namespace {

using detail::integer_time;
using detail::log_rising;

// Below this many Meijer poles the residue sum is cheaper than a power-decay line.
constexpr int kFewPoles = 24;

// Centered truncated-unitary kernel with [t nu] identical factors of type (nu, ell).
class ScaledCritical final : public ExtendedKernel {
 public:
  ScaledCritical(int n, int nu, int ell, KernelOptions opt) : ExtendedKernel(opt), n_(n), nu_(nu), ell_(ell) {
    if (n < 1 || nu < 1 || ell < n) throw std::invalid_argument("scaled kernel: need n >= 1, nu >= 1, ell >= n");
  }
  KernelId id() const override { return KernelId::ScaledCritical; }
  std::string parameters() const override {
    return "n=" + std::to_string(n_) + " nu=" + std::to_string(nu_) + " ell=" + std::to_string(ell_);
  }
  Domain domain() const override { return Domain::Real; }
  double coupling_x(double, double x) const override { return x; }
  double coupling_y(double, double y) const override { return y; }
  cplx diff(cplx z) const { return F_a(nu_, z) - F_a(nu_ + ell_, z); }
  cplx log_a(double t, cplx s) const override {
    return static_cast<double>(scaled_time(t, nu_)) * diff(s) + F_a(n_, -s) + log_rgamma(-s);
  }
  cplx log_b(double tau, cplx z) const override {
    return -static_cast<double>(scaled_time(tau, nu_)) * diff(z) - F_a(n_, -z) + log_gamma(-z);
  }
  SideShape sigma_shape(double t) const override {
    const double rate = static_cast<double>(ell_) * scaled_time(t, nu_) - n_;
    return {SideKind::Vertical, {}, {DecayKind::Power, rate}};
  }
  SideShape zeta_shape(double) const override {
    return {SideKind::Closed, {{0.0}, {n_}, 1.0}, {DecayKind::Exponential, 0.0}};
  }
  double first_term(double tau, double x, double t, double y, Backend b) const override {
    check_args(tau, x, t, y);
    const int p = scaled_time(t, nu_) - scaled_time(tau, nu_);
    if (p <= 0) return 0.0;
    if (p * ell_ <= kFewPoles) {
      const double a = nu_, c = ell_;
      const double c1 = std::log((a + c) / a) + c / (2.0 * a * (a + c));
      const MeijerKK g{std::vector<double>(p, a), std::vector<int>(p, ell_)};
      const double log_scale = p * (std::lgamma(a + c) - std::lgamma(a));
      const double z = std::exp(x - y - p * c1);
      return -(b == Backend::Residue ? meijer_g_residues(g, z, log_scale)
                                     : meijer_g_contour(g, z, MeijerPath::Closed, 1e-10, log_scale));
    }
    auto logf = [&](cplx eta) { return static_cast<double>(p) * diff(eta) - (x - y) * eta; };
    return -detail::saddle_line_integral(logf, -nu_, {DecayKind::Power, static_cast<double>(p) * ell_}, opt_);
  }
  std::optional<double> breakpoint(double tau, double x, double t) const override {
    if (scaled_time(t, nu_) <= scaled_time(tau, nu_)) return std::nullopt;
    return x + critical_centering(n_, nu_, ell_, tau) - critical_centering(n_, nu_, ell_, t);
  }

 protected:
  void check_args(double tau, double x, double t, double y) const override {
    scaled_time(tau, nu_);
    scaled_time(t, nu_);
    if (!std::isfinite(x) || !std::isfinite(y)) throw std::domain_error("scaled kernel: x, y must be finite");
  }
  int n_, nu_, ell_;
};

// Truncated-unitary multiplicative kernel at x / (n prod_{j <= q}(ell_j + nu_j)), gauge included.
class ScaledHardEdgeTU final : public ExtendedKernel {
 public:
  ScaledHardEdgeTU(int n, std::vector<int> nu, std::vector<int> ell, KernelOptions opt)
      : ExtendedKernel(opt), n_(n), nu_(std::move(nu)), ell_(std::move(ell)) {
    if (n_ < 1 || nu_.empty() || nu_.size() != ell_.size())
      throw std::invalid_argument("scaled kernel: need n >= 1 and matching nonempty nu, ell");
    for (std::size_t j = 0; j < nu_.size(); ++j)
      if (nu_[j] < 1 || ell_[j] < 1) throw std::invalid_argument("scaled kernel: nu, ell must be positive");
    if (ell_[0] < n_) throw std::invalid_argument("scaled kernel: ell_1 must be at least n");
    log_scale_.assign(nu_.size() + 1, 0.0);
    log_gamma_.assign(nu_.size() + 1, 0.0);
    for (std::size_t j = 0; j < nu_.size(); ++j) {
      log_scale_[j + 1] = log_scale_[j] + std::log(static_cast<double>(ell_[j] + nu_[j]));
      log_gamma_[j + 1] = log_gamma_[j] + std::lgamma(static_cast<double>(ell_[j] + nu_[j]));
    }
  }
  KernelId id() const override { return KernelId::ScaledHardEdgeTU; }
  std::string parameters() const override {
    std::string s = "n=" + std::to_string(n_) + " nu=";
    for (std::size_t j = 0; j < nu_.size(); ++j) s += (j ? ";" : "") + std::to_string(nu_[j]);
    s += " ell=";
    for (std::size_t j = 0; j < ell_.size(); ++j) s += (j ? ";" : "") + std::to_string(ell_[j]);
    return s;
  }
  Domain domain() const override { return Domain::Positive; }
  double scaled_log(int t, double x) const { return std::log(x) - std::log(static_cast<double>(n_)) - log_scale_[t]; }
  double coupling_x(double q, double x) const override { return -scaled_log(integer_time(q, K()), x); }
  double coupling_y(double r, double y) const override { return -scaled_log(integer_time(r, K()), y); }
  double log_extra(double, double y) const override { return -std::log(y); }
  cplx log_a(double r, cplx s) const override {
    const int R = integer_time(r, K());
    cplx acc = log_rising(s, 1.0 - n_, n_) + log_gamma_[R];
    for (int j = 0; j < R; ++j) acc -= log_rising(s, nu_[j], ell_[j]);
    return acc;
  }
  cplx log_b(double q, cplx z) const override {
    const int Q = integer_time(q, K());
    cplx acc = -log_rising(z, 1.0 - n_, n_) - log_gamma_[Q];
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
  double first_term(double q, double x, double r, double y, Backend b) const override {
    check_args(q, x, r, y);
    const int Q = integer_time(q, K()), R = integer_time(r, K());
    if (R <= Q) return 0.0;
    const double lx = scaled_log(Q, x), ly = scaled_log(R, y);
    const double log_p = -std::log(static_cast<double>(n_)) + log_gamma_[R] - log_scale_[R] - log_gamma_[Q] - lx;
    MeijerKK g;
    int total = 0;
    for (int j = Q; j < R; ++j) {
      g.b.push_back(nu_[j] - 1.0);
      g.ell.push_back(ell_[j]);
      total += ell_[j];
    }
    const double log_z = ly - lx;
    if (total <= kFewPoles) {
      const double z = std::exp(log_z);
      return -(b == Backend::Residue ? meijer_g_residues(g, z, log_p)
                                     : meijer_g_contour(g, z, MeijerPath::Closed, 1e-10, log_p));
    }
    if (log_z >= 0.0) return 0.0;
    double bmin = g.b[0];
    for (double v : g.b) bmin = std::min(bmin, v);
    auto logf = [&](cplx eta) {
      cplx acc = log_p - eta * log_z;
      for (std::size_t j = 0; j < g.b.size(); ++j) acc -= log_rising(eta, g.b[j], g.ell[j]);
      return acc;
    };
    return -detail::saddle_line_integral(logf, -bmin, {DecayKind::Power, static_cast<double>(total)}, opt_);
  }
  std::optional<double> breakpoint(double q, double x, double r) const override {
    const int Q = integer_time(q, K()), R = integer_time(r, K());
    if (R <= Q) return std::nullopt;
    return x * std::exp(log_scale_[R] - log_scale_[Q]);
  }

 protected:
  void check_args(double q, double x, double r, double y) const override {
    integer_time(q, K());
    integer_time(r, K());
    if (!(x > 0) || !(y > 0)) throw std::domain_error("scaled kernel: x, y must be positive");
  }
  int K() const { return static_cast<int>(nu_.size()); }
  int n_;
  std::vector<int> nu_, ell_;
  std::vector<double> log_scale_, log_gamma_;
};

// Hard-edge kernel with constant nu, recentred on the soft scale.
class ScaledHardToSoft final : public ExtendedKernel {
 public:
  ScaledHardToSoft(int nu, KernelOptions opt)
      : ExtendedKernel(opt), nu_(nu), c_(std::log(static_cast<double>(nu)) - 0.5 / nu),
        lg_(std::lgamma(static_cast<double>(nu))) {
    if (nu < 1) throw std::invalid_argument("scaled kernel: nu must be positive");
  }
  KernelId id() const override { return KernelId::ScaledHardToSoft; }
  std::string parameters() const override { return "nu=" + std::to_string(nu_); }
  Domain domain() const override { return Domain::Real; }
  double coupling_x(double tau, double x) const override { return x - scaled_time(tau, nu_) * c_; }
  double coupling_y(double t, double y) const override { return y - scaled_time(t, nu_) * c_; }
  cplx log_a(double t, cplx s) const override {
    return static_cast<double>(scaled_time(t, nu_)) * (log_gamma(s + static_cast<double>(nu_)) - lg_) +
           log_rgamma(-s);
  }
  cplx log_b(double tau, cplx z) const override {
    return log_gamma(-z) - static_cast<double>(scaled_time(tau, nu_)) * (log_gamma(z + static_cast<double>(nu_)) - lg_);
  }
  SideShape sigma_shape(double) const override { return {SideKind::Vertical, {}, {DecayKind::Exponential, 0.0}}; }
  SideShape zeta_shape(double) const override {
    return {SideKind::RightOpen, {{0.0}, {0}, 1.0}, {DecayKind::Exponential, 0.0}};
  }
  double first_term(double tau, double x, double t, double y, Backend) const override {
    check_args(tau, x, t, y);
    const int k = scaled_time(t, nu_) - scaled_time(tau, nu_);
    if (k <= 0) return 0.0;
    const double log_z = k * c_ + x - y;
    auto logf = [&](cplx eta) {
      return static_cast<double>(k) * (log_gamma(eta + static_cast<double>(nu_)) - lg_) - eta * log_z;
    };
    return -detail::saddle_line_integral(logf, -nu_, {DecayKind::Exponential, 0.0}, opt_);
  }

 protected:
  void check_args(double tau, double x, double t, double y) const override {
    scaled_time(tau, nu_);
    scaled_time(t, nu_);
    if (!std::isfinite(x) || !std::isfinite(y)) throw std::domain_error("scaled kernel: x, y must be finite");
  }
  int nu_;
  double c_, lg_;
};

}  // namespace

KernelPtr make_scaled_critical(int n, int nu, int ell, KernelOptions opt) {
  return std::make_shared<ScaledCritical>(n, nu, ell, opt);
}
KernelPtr make_scaled_hard_edge_tu(int n, std::vector<int> nu, std::vector<int> ell, KernelOptions opt) {
  return std::make_shared<ScaledHardEdgeTU>(n, std::move(nu), std::move(ell), opt);
}
KernelPtr make_scaled_hard_to_soft(int nu, KernelOptions opt) { return std::make_shared<ScaledHardToSoft>(nu, opt); }

KernelValue scaled_critical_kernel(int n, int nu, int ell, double tau, double x, double t, double y, Backend b) {
  return (*make_scaled_critical(n, nu, ell))(tau, x, t, y, b);
}
KernelValue scaled_hard_edge_tu_kernel(int n, const std::vector<int>& nu, const std::vector<int>& ell, int q,
                                       double x, int r, double y, Backend b) {
  return (*make_scaled_hard_edge_tu(n, nu, ell))(q, x, r, y, b);
}
KernelValue scaled_hard_to_soft_kernel(int nu, double tau, double x, double t, double y, Backend b) {
  return (*make_scaled_hard_to_soft(nu))(tau, x, t, y, b);
}

}  // namespace perclab
