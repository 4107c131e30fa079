#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "perclab/rsk.hpp"

namespace perclab {

struct SchurProcessParams {
  int n = 0;
  std::vector<double> x;               // length n
  std::vector<std::vector<double>> y;  // y[k] has length ell_{k+1}
  int q() const { return static_cast<int>(y.size()); }
  void validate() const;
};

struct ExpLimitParams {
  int n = 0;
  std::vector<int> nu;
  std::vector<int> ell;
  int q() const { return static_cast<int>(nu.size()); }
  void validate() const;
};

// det(x_i^{lambda_j + m - j}) / det(x_i^{m - j}); Jacobi-Trudi when two x are close.
double schur_bialternant(const Partition& lambda, const std::vector<double>& x);
double schur_jacobi_trudi(const Partition& lambda, const std::vector<double>& x);

// Sum over semi-standard tableaux of shape lambda/mu. Throws std::length_error
// once more than budget intermediate shapes have been visited.
double skew_schur_tableau_sum(const Partition& lambda, const Partition& mu, const std::vector<double>& y,
                              std::uint64_t budget = 2'000'000);

double schur_process_pmf(const SchurProcessParams& params, const std::vector<Partition>& lambdas);

struct NormalizationReport {
  std::vector<double> stratum_mass;  // indexed by |lambda^{(q)}|
  double mass = 0.0;                 // total enumerated mass
  double tail = 0.0;                 // exact probability of weight above the cutoff
  void write_csv(std::ostream& os) const;
};
// Enumerates all chains with |lambda^{(q)}| <= max_weight, stratum by stratum.
NormalizationReport schur_process_normalization(const SchurProcessParams& params, int max_weight);

// Joint density of the exponential limit; lambdas[k] has length n and is
// read on the ordered chamber (sorted descending).
double exp_limit_density(const ExpLimitParams& params, const std::vector<std::vector<double>>& lambdas);
double exp_limit_log_normalizer(const ExpLimitParams& params);

// P(largest coordinate of lambda^{(time)} <= s) by nested adaptive Gauss-Kronrod.
double exp_limit_marginal_cdf_lambda1(const ExpLimitParams& params, int time, double s, double tol = 1e-9);
// Total mass of the density (normalization check).
double exp_limit_total_mass(const ExpLimitParams& params, double cutoff, double tol = 1e-9);

}  // namespace perclab
