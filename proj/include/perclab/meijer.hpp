#pragma once

#include <vector>

#include "perclab/special.hpp"

namespace perclab {

// G^{k,0}_{k,k}(b + ell; b | z): rational Mellin-Barnes integrand,
// poles at -b_j - m, m < ell_j.
struct MeijerKK {
  std::vector<double> b;
  std::vector<int> ell;
};

// G^{k,0}_{0,k}(-; b | z): poles at -b_j - m for all m >= 0.
struct Meijer0K {
  std::vector<double> b;
};

enum class MeijerPath { VerticalLine, Closed };

// Sum of residues, each extracted with residue_circle.
double meijer_g_residues(const MeijerKK& g, double z, double log_scale = 0.0);
// log_scale is added to the log of the integrand (keeps huge/small
// prefactors out of overflow). The result is exp(log_scale) * G(z).
double meijer_g_residues(const Meijer0K& g, double z, double log_scale = 0.0);

// Quadrature of the Mellin-Barnes integral. Closed: box around the poles
// (G^{k,0}_{k,k} only). VerticalLine: line right of all poles; throws
// std::domain_error when the integrand is not absolutely integrable.
double meijer_g_contour(const MeijerKK& g, double z, MeijerPath path = MeijerPath::Closed,
                        double tol = 1e-10, double log_scale = 0.0);
double meijer_g_contour(const Meijer0K& g, double z, double log_scale = 0.0, double tol = 1e-13);

}  // namespace perclab
