#include "perclab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace perclab {
namespace {

constexpr double kPi = std::numbers::pi;
const cplx kTwoPiI(0.0, 2.0 * kPi);

GaussRule build_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

// Kronrod 15 / Gauss 7 abscissae and weights on [-1, 1].
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Gk {
  double value, error;
};

Gk gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double rk = fc * kWgk[7], rg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx), f2 = f(c + dx);
    rk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) rg += kWg[j / 2] * (f1 + f2);
  }
  return {rk * h, std::abs((rk - rg) * h)};
}

void adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth,
           AdaptiveResult& out) {
  const Gk whole = gk15(f, a, b);
  out.evaluations += 15;
  if (whole.error <= tol || depth <= 0 || std::abs(b - a) < 1e-14 * (1.0 + std::abs(a))) {
    out.value += whole.value;
    out.error += whole.error;
    return;
  }
  const double m = 0.5 * (a + b);
  adapt(f, a, m, 0.5 * tol, depth - 1, out);
  adapt(f, m, b, 0.5 * tol, depth - 1, out);
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<GaussRule>(build_gauss_legendre(order));
  return *slot;
}

RealRule composite_gauss(double a, double b, int panels, int order) {
  if (panels < 1) throw std::invalid_argument("composite_gauss: panels must be positive");
  const GaussRule& g = gauss_legendre(order);
  RealRule r;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (int k = 0; k < order; ++k) {
      r.x.push_back(lo + 0.5 * h * (g.nodes[k] + 1.0));
      r.w.push_back(0.5 * h * g.weights[k]);
    }
  }
  return r;
}

void NodeSet::append(const NodeSet& other) {
  z.insert(z.end(), other.z.begin(), other.z.end());
  w.insert(w.end(), other.w.begin(), other.w.end());
}

NodeSet circle_nodes(cplx center, double radius, int nodes) {
  if (nodes < 2 || radius <= 0) throw std::invalid_argument("circle_nodes: bad circle");
  NodeSet s;
  s.z.reserve(nodes);
  s.w.reserve(nodes);
  for (int k = 0; k < nodes; ++k) {
    const cplx u = std::polar(1.0, 2.0 * kPi * k / nodes);
    // dz / (2 pi i) = radius * u * dtheta / (2 pi)
    s.z.push_back(center + radius * u);
    s.w.push_back(radius * u / static_cast<double>(nodes));
  }
  return s;
}

cplx residue_circle(const std::function<cplx(cplx)>& f, cplx center, double radius, int nodes) {
  const NodeSet s = circle_nodes(center, radius, nodes);
  cplx acc = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) acc += s.w[k] * f(s.z[k]);
  return acc;
}

NodeSet segment_nodes(cplx a, cplx b, int panels, int order) {
  const GaussRule& g = gauss_legendre(order);
  NodeSet s;
  const cplx d = (b - a) / static_cast<double>(panels);
  for (int p = 0; p < panels; ++p) {
    const cplx lo = a + static_cast<double>(p) * d;
    for (int k = 0; k < order; ++k) {
      s.z.push_back(lo + 0.5 * d * (g.nodes[k] + 1.0));
      s.w.push_back(0.5 * d * g.weights[k] / kTwoPiI);
    }
  }
  return s;
}

AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, double rel_tol, int max_depth,
                                  const std::vector<double>& breakpoints) {
  AdaptiveResult out;
  if (!(b > a)) return out;
  std::vector<double> cuts{a};
  for (double c : breakpoints)
    if (c > a && c < b) cuts.push_back(c);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  // Coarse pass fixes the relative scale.
  double scale = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) scale += std::abs(gk15(f, cuts[i], cuts[i + 1]).value);
  out.evaluations += 15 * static_cast<int>(cuts.size() - 1);
  const double tol = std::max(abs_tol, rel_tol * scale);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    const double share = tol * (cuts[i + 1] - cuts[i]) / (b - a);
    adapt(f, cuts[i], cuts[i + 1], share, max_depth, out);
  }
  return out;
}

}  // namespace perclab
