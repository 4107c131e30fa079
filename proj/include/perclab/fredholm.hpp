#pragma once

#include <vector>

#include "perclab/kernels.hpp"

namespace perclab {

// P(no points above s_j at time r_j for all j) = det(I - K) on the windows.
// Positive/real kernels use (s_j, s_j + Lambda_j); unit-domain kernels use (0, e^{-s_j}).
struct FredholmProblem {
  KernelPtr kernel;
  std::vector<double> times;       // strictly increasing
  std::vector<double> thresholds;  // one per time
  std::vector<double> window;      // Lambda_j; empty selects from the diagonal decay
  int nodes = 24;                  // starting nodes per time slice
  int max_nodes = 192;
  Backend backend = Backend::Residue;
  bool parallel = true;
  void validate() const;
};

struct GapResult {
  double value = 0.0;
  double est_error = 0.0;  // last node-doubling difference
  int nodes = 0;           // per time slice
  double rcond = 0.0;      // reciprocal condition estimate of I - K
  bool converged = false;
  std::vector<double> window_lo, window_hi;
  double runtime_ms = 0.0;
};

// Lambda_j where the diagonal drops below 1e-10 of its maximum, capped at 40.
std::vector<double> select_windows(const FredholmProblem& p);

// Discretized matrix M with det(I - M) the gap probability at a fixed node count.
Eigen::MatrixXd nystrom_matrix(const FredholmProblem& p, int nodes);

// Doubles the node count until two successive values differ by less than cauchy_tol;
// throws std::runtime_error when max_nodes is reached first.
GapResult nystrom_gap_probability(const FredholmProblem& p, double cauchy_tol = 1e-6);

// 1 + sum_{m <= m_max} (-1)^m / m! * (m-fold integrals of m x m kernel minors),
// evaluated as principal-minor sums of a separate discretization. m_max <= 3.
GapResult series_gap_probability(const FredholmProblem& p, int m_max, double cauchy_tol = 1e-6);

// Gap probability of the critical process at distinct times.
GapResult critical_fidi(const std::vector<double>& times, const std::vector<double>& thresholds,
                        Backend b = Backend::Residue, double cauchy_tol = 1e-6);

}  // namespace perclab
