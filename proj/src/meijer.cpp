#include "perclab/meijer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "perclab/contour.hpp"
#include "perclab/quadrature.hpp"

namespace perclab {
namespace {

constexpr double kPoleMerge = 1e-9;

void check_kk(const MeijerKK& g) {
  if (g.b.empty() || g.b.size() != g.ell.size())
    throw std::invalid_argument("meijer G^{k,0}_{k,k}: parameter size mismatch");
  for (int l : g.ell)
    if (l < 1) throw std::invalid_argument("meijer G^{k,0}_{k,k}: ell must be positive");
}

void check_0k(const Meijer0K& g) {
  if (g.b.empty()) throw std::invalid_argument("meijer G^{k,0}_{0,k}: empty parameter list");
}

cplx kk_integrand(const MeijerKK& g, cplx eta, double log_z, double log_scale) {
  cplx acc = log_scale - eta * log_z;
  cplx denom = 1.0;
  for (std::size_t j = 0; j < g.b.size(); ++j) {
    if (g.ell[j] > 12) {
      acc -= log_gamma(eta + g.b[j] + static_cast<double>(g.ell[j])) - log_gamma(eta + g.b[j]);
      continue;
    }
    for (int m = 0; m < g.ell[j]; ++m) denom *= eta + g.b[j] + static_cast<double>(m);
  }
  return std::exp(acc) / denom;
}

cplx log_0k_integrand(const Meijer0K& g, cplx eta, double log_z, double log_scale) {
  cplx acc = log_scale - eta * log_z;
  for (double b : g.b) acc += log_gamma(b + eta);
  return acc;
}

std::vector<double> distinct_desc(std::vector<double> p) {
  std::sort(p.begin(), p.end(), std::greater<>());
  std::vector<double> out;
  for (double v : p)
    if (out.empty() || std::abs(out.back() - v) > kPoleMerge) out.push_back(v);
  return out;
}

double circle_radius(const std::vector<double>& poles) {
  double r = 0.25;
  for (std::size_t i = 0; i + 1 < poles.size(); ++i) r = std::min(r, 0.45 * std::abs(poles[i] - poles[i + 1]));
  return r;
}

int circle_nodes_for(double radius, double log_z) {
  const double need = std::exp(1.0) * radius * std::abs(log_z) + 48.0;
  return 32 * static_cast<int>(std::ceil(need / 32.0));
}

double kk_residue_sum(const MeijerKK& g, double log_z, double log_scale) {
  std::vector<double> raw;
  for (std::size_t j = 0; j < g.b.size(); ++j)
    for (int m = 0; m < g.ell[j]; ++m) raw.push_back(-g.b[j] - m);
  const auto poles = distinct_desc(raw);
  const double r = circle_radius(poles);
  const int nodes = circle_nodes_for(r, log_z);
  cplx acc = 0.0;
  for (double p : poles)
    acc += residue_circle([&](cplx eta) { return kk_integrand(g, eta, log_z, log_scale); }, p, r, nodes);
  return acc.real();
}

}  // namespace

double meijer_g_residues(const MeijerKK& g, double z, double log_scale) {
  check_kk(g);
  if (!(z > 0)) throw std::domain_error("meijer G: z must be positive");
  int total = 0;
  for (int l : g.ell) total += l;
  if (z > 1.0) return 0.0;
  if (z == 1.0) return total == 1 ? 0.5 * kk_residue_sum(g, 0.0, log_scale) : 0.0;
  return kk_residue_sum(g, std::log(z), log_scale);
}

double meijer_g_residues(const Meijer0K& g, double z, double log_scale) {
  check_0k(g);
  if (!(z > 0)) throw std::domain_error("meijer G: z must be positive");
  const double log_z = std::log(z);
  // Walk the distinct poles -b_j - m from the right, one circle each.
  std::vector<int> next(g.b.size(), 0);
  std::vector<double> probe;
  for (double b : g.b)
    for (int m = 0; m < 3; ++m) probe.push_back(-b - m);
  const double r = circle_radius(distinct_desc(probe));
  const int nodes = circle_nodes_for(r, log_z);
  auto f = [&](cplx eta) { return std::exp(log_0k_integrand(g, eta, log_z, log_scale)); };

  cplx acc = 0.0;
  double biggest = 0.0, prev_mag = 0.0;
  int quiet = 0;
  for (int step = 0; step < 500; ++step) {
    double p = -1e300;
    for (std::size_t j = 0; j < g.b.size(); ++j) p = std::max(p, -g.b[j] - next[j]);
    for (std::size_t j = 0; j < g.b.size(); ++j)
      if (std::abs(-g.b[j] - next[j] - p) <= kPoleMerge) ++next[j];
    const cplx term = residue_circle(f, p, r, nodes);
    acc += term;
    const double mag = std::abs(term);
    biggest = std::max(biggest, mag);
    const bool small = mag <= 1e-17 * std::max(biggest, std::abs(acc));
    quiet = (small && mag <= prev_mag) ? quiet + 1 : 0;
    prev_mag = mag;
    if (quiet >= 3) return acc.real();
  }
  throw std::runtime_error("meijer G^{k,0}_{0,k}: residue series did not converge within 500 poles");
}

double meijer_g_contour(const MeijerKK& g, double z, MeijerPath path, double tol, double log_scale) {
  check_kk(g);
  if (!(z > 0)) throw std::domain_error("meijer G: z must be positive");
  int total = 0;
  for (int l : g.ell) total += l;
  const double log_z = std::log(z);
  double bmin = g.b[0], pmin = 0.0;
  for (std::size_t j = 0; j < g.b.size(); ++j) {
    bmin = std::min(bmin, g.b[j]);
    pmin = std::min(pmin, -g.b[j] - (g.ell[j] - 1));
  }
  pmin = std::min(pmin, -bmin);
  const double pmax = -bmin;
  auto f = [&](cplx eta) { return kk_integrand(g, eta, log_z, log_scale); };

  if (path == MeijerPath::Closed) {
    if (z > 1.0) return 0.0;
    if (z == 1.0 && total > 1) return 0.0;
    Contour box = box_contour(pmin - 0.5, pmax + 0.5, 0.25);
    const NodeSet s = discretize(box, 16, 0);
    cplx acc = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) acc += s.w[k] * f(s.z[k]);
    if (z == 1.0) acc *= 0.5;
    return acc.real();
  }

  if (total <= 1) throw std::domain_error("meijer G^{k,0}_{k,k}: vertical line integral not absolutely convergent");
  const double c = pmax + 0.5;
  // Power tail |eta|^{-total}: pick the truncation from the decay model.
  const double W = std::pow(1.0 / ((total - 1) * tol), 1.0 / (total - 1));
  if (W > 1e6) throw std::domain_error("meijer G^{k,0}_{k,k}: tail bound violated on vertical line");
  const double wave = 2.0 * std::numbers::pi / std::max(std::abs(log_z), 1e-3);
  const GaussRule& rule = gauss_legendre(16);
  cplx acc = 0.0;
  double u = 0.0;
  while (u < W) {
    const double h = std::clamp(0.1 * u, 0.25, std::min(2.0, 0.5 * wave));
    const double hi = std::min(W, u + h);
    const double mid = 0.5 * (u + hi), half = 0.5 * (hi - u);
    for (int k = 0; k < 16; ++k) {
      const double v = mid + half * rule.nodes[k];
      // symmetric pair, dz = i du, divided by 2 pi i
      const cplx s = f(cplx(c, v)) + f(cplx(c, -v));
      acc += half * rule.weights[k] * s / (2.0 * std::numbers::pi);
    }
    u = hi;
  }
  if (std::abs(acc.imag()) > std::max(tol, 1e-8 * std::abs(acc.real())))
    throw std::runtime_error("meijer G: imaginary residue above tolerance");
  return acc.real();
}

double meijer_g_contour(const Meijer0K& g, double z, double log_scale, double tol) {
  check_0k(g);
  if (!(z > 0)) throw std::domain_error("meijer G: z must be positive");
  const double log_z = std::log(z);
  double bmin = g.b[0];
  for (double b : g.b) bmin = std::min(bmin, b);
  const double c = -bmin + 0.5;
  auto logf = [&](cplx eta) { return log_0k_integrand(g, eta, log_z, log_scale); };
  Contour line = vertical_line(c, [&](cplx eta) { return logf(eta).real(); },
                               {DecayKind::Exponential, 0.0}, tol, 400.0);
  line.panel_length = std::min(0.25, 1.0 / std::max(std::abs(log_z), 1.0));
  const NodeSet s = discretize(line, 16, 0);
  cplx acc = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) acc += s.w[k] * std::exp(logf(s.z[k]));
  double scale = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) scale += std::abs(s.w[k] * std::exp(logf(s.z[k])));
  if (std::abs(acc.imag()) > 1e-10 * scale) throw std::runtime_error("meijer G: imaginary residue above tolerance");
  return acc.real();
}

}  // namespace perclab
