#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "perclab/contour.hpp"
#include "perclab/special.hpp"

namespace perclab {

enum class Backend { Quadrature, Residue };
const char* backend_name(Backend b);

struct KernelValue {
  double value = 0.0;
  Backend backend = Backend::Quadrature;
  double est_error = 0.0;
};

enum class KernelId {
  TruncatedUnitaryLog,
  TruncatedUnitaryMult,
  Ginibre,
  HardEdge,
  Critical,
  ScaledCritical,
  ScaledHardEdgeTU,
  ScaledHardToSoft
};
const char* kernel_name(KernelId id);

struct KernelOptions {
  double perturb = 1.0;          // scales all rectangle offsets
  double sigma_abscissa = -0.5;  // vertical sigma lines
  double tol = 1e-16;            // relative tail left by truncated contours
  double cap = 400.0;            // hard limit on truncation bounds
};

// Poles start_j + step * m, m = 0 .. count_j - 1 (count 0 means unbounded).
struct PoleSet {
  std::vector<double> start;
  std::vector<int> count;
  double step = -1.0;
  bool empty() const { return start.empty(); }
  bool finite() const;
  // Last pole in the walking direction (finite sets only).
  double extreme() const;
};

enum class SideKind { Closed, LeftOpen, RightOpen, Vertical };

struct SideShape {
  SideKind kind = SideKind::Closed;
  PoleSet poles;
  DecayModel decay;
};

// Discretized side of the double integral: sum_k exp(lw[k] + kappa z[k]) g(z[k])
// approximates the contour integral of f(z) e^{kappa z} g(z) dz / (2 pi i).
struct SideNodes {
  std::vector<cplx> z;
  std::vector<cplx> lw;
  TruncationReport truncation;
  std::size_t size() const { return z.size(); }
};

// Every kernel has the form
//   K(q, x; r, y) = first(q, x; r, y)
//     + sum_{zeta, sigma} B_q(zeta) e^{-X zeta} A_r(sigma) e^{Y sigma + E(y)} / (sigma - zeta)
// with X = X(q, x), Y = Y(r, y) and a scalar log factor E.
class ExtendedKernel {
 public:
  explicit ExtendedKernel(KernelOptions opt) : opt_(opt) {}
  virtual ~ExtendedKernel() = default;

  virtual KernelId id() const = 0;
  virtual std::string parameters() const = 0;

  // Value at discretization level 1 with the level-0 difference as error estimate.
  KernelValue operator()(double q, double x, double r, double y, Backend b = Backend::Residue) const;
  double evaluate(double q, double x, double r, double y, Backend b, int level = 0) const;
  // Both backends; throws std::runtime_error when they differ by more than rel_tol.
  KernelValue checked(double q, double x, double r, double y, double rel_tol) const;

  virtual double first_term(double q, double x, double r, double y, Backend b) const = 0;
  double double_integral(double q, double x, double r, double y, Backend b, int level = 0) const;
  // Double-integral part on a tensor grid (rows xs, columns ys).
  Eigen::MatrixXd smooth_block(double q, const std::vector<double>& xs, double r, const std::vector<double>& ys,
                               Backend b, int level = 0) const;
  // Where the first term of K(q, x; r, .) is not smooth.
  virtual std::optional<double> breakpoint(double q, double x, double r) const;

  // Coordinates are positive (log kernels), in (0, 1) (mult), or real.
  enum class Domain { Positive, Unit, Real };
  virtual Domain domain() const = 0;

  const KernelOptions& options() const { return opt_; }
  void set_options(const KernelOptions& o) { opt_ = o; }

  SideNodes sigma_nodes(double r, Backend b, int level, double kappa_min, double kappa_max) const;
  SideNodes zeta_nodes(double q, Backend b, int level, double kappa_min, double kappa_max) const;

  virtual cplx log_a(double r, cplx sigma) const = 0;
  virtual cplx log_b(double q, cplx zeta) const = 0;
  virtual double coupling_x(double q, double x) const = 0;
  virtual double coupling_y(double r, double y) const = 0;
  virtual double log_extra(double r, double y) const;
  virtual SideShape sigma_shape(double r) const = 0;
  virtual SideShape zeta_shape(double q) const = 0;

 protected:
  virtual void check_args(double q, double x, double r, double y) const = 0;
  KernelOptions opt_;
};

using KernelPtr = std::shared_ptr<const ExtendedKernel>;

KernelPtr make_truncated_unitary_log(int n, std::vector<int> nu, std::vector<int> ell, KernelOptions opt = {});
KernelPtr make_truncated_unitary_mult(int n, std::vector<int> nu, std::vector<int> ell, KernelOptions opt = {});
KernelPtr make_ginibre(int n, std::vector<int> nu, KernelOptions opt = {});
KernelPtr make_hard_edge(std::vector<int> nu, KernelOptions opt = {});
KernelPtr make_critical(KernelOptions opt = {});
KernelPtr make_scaled_critical(int n, int nu, int ell, KernelOptions opt = {});
KernelPtr make_scaled_hard_edge_tu(int n, std::vector<int> nu, std::vector<int> ell, KernelOptions opt = {});
KernelPtr make_scaled_hard_to_soft(int nu, KernelOptions opt = {});

KernelValue k_truncated_unitary_log(int n, const std::vector<int>& nu, const std::vector<int>& ell, int q, double x,
                                    int r, double y, Backend b = Backend::Residue);
KernelValue k_truncated_unitary_mult(int n, const std::vector<int>& nu, const std::vector<int>& ell, int q, double x,
                                     int r, double y, Backend b = Backend::Residue);
KernelValue k_ginibre(int n, const std::vector<int>& nu, int q, double x, int r, double y,
                      Backend b = Backend::Residue);
KernelValue k_hard_edge(const std::vector<int>& nu, int q, double x, int r, double y, Backend b = Backend::Residue);
KernelValue k_critical(double tau, double x, double t, double y, Backend b = Backend::Residue);
KernelValue scaled_critical_kernel(int n, int nu, int ell, double tau, double x, double t, double y,
                                   Backend b = Backend::Residue);
KernelValue scaled_hard_edge_tu_kernel(int n, const std::vector<int>& nu, const std::vector<int>& ell, int q,
                                       double x, int r, double y, Backend b = Backend::Residue);
KernelValue scaled_hard_to_soft_kernel(int nu, double tau, double x, double t, double y, Backend b = Backend::Residue);

// Integer time [t nu], checked to be at least 1.
int scaled_time(double t, int nu);

}  // namespace perclab
