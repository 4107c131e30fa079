#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "perclab/special.hpp"

namespace perclab {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// Gauss-Legendre rule of the given order (cached, thread safe).
const GaussRule& gauss_legendre(int order);

// Real composite rule on [a, b] with equal panels.
struct RealRule {
  std::vector<double> x;
  std::vector<double> w;
};
RealRule composite_gauss(double a, double b, int panels, int order);

// Discretized contour: integral of f over the contour divided by 2 pi i
// is approximated by sum_k w[k] f(z[k]).
struct NodeSet {
  std::vector<cplx> z;
  std::vector<cplx> w;
  void append(const NodeSet& other);
  std::size_t size() const { return z.size(); }
};

// Trapezoid rule on the circle |z - center| = radius, counterclockwise.
NodeSet circle_nodes(cplx center, double radius, int nodes);

// (1 / 2 pi i) times the circle integral of f, i.e. the sum of enclosed residues.
cplx residue_circle(const std::function<cplx(cplx)>& f, cplx center, double radius, int nodes);

// Gauss-Legendre nodes on the straight segment a -> b, scaled by 1 / (2 pi i).
NodeSet segment_nodes(cplx a, cplx b, int panels, int order);

// One-dimensional adaptive Gauss-Kronrod (7-15) with interior breakpoints.
struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, double rel_tol, int max_depth = 14,
                                  const std::vector<double>& breakpoints = {});

}  // namespace perclab
