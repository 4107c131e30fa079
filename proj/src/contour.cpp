#include "perclab/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace perclab {
namespace {

struct Walk {
  double t = 0.0;
  double tail = 0.0;
  bool closed = false;
};

// Walks outward along an open contour until the modelled tail is below tol
// relative to the largest magnitude seen.
Walk walk_out(const std::function<double(double)>& log_mag_at, DecayModel decay, double tol, double cap,
              double step, std::optional<double> close_at) {
  if (decay.kind == DecayKind::Power && decay.rate <= 1.0)
    throw std::domain_error("contour truncation: power decay rate must exceed 1");
  double lmax = log_mag_at(0.0);
  double prev = lmax;
  for (double t = step; t <= cap + 0.5 * step; t += step) {
    const double l = log_mag_at(t);
    if (close_at && t >= *close_at) return {t, 0.0, true};
    lmax = std::max(lmax, l);
    const double rel = std::exp(l - lmax);
    double tail = std::numeric_limits<double>::infinity();
    if (decay.kind == DecayKind::Power) {
      tail = rel * std::max(t, 1.0) / (decay.rate - 1.0);
    } else {
      const double ratio = std::exp(l - prev);
      if (ratio < 1.0) tail = rel * step / (1.0 - ratio);
    }
    if (rel == 0.0) tail = 0.0;
    if (tail < tol && t >= 2.0) return {t, tail, false};
    prev = l;
  }
  throw std::runtime_error("contour truncation: tolerance not reached within cap");
}

}  // namespace

Contour zeta_closed_contour(int n, double perturb) {
  if (n < 1) throw std::invalid_argument("zeta_closed_contour: n must be positive");
  Contour c;
  c.kind = ContourKind::ZetaClosed;
  c.left = -kZetaLeft * perturb;
  c.right = (n - 1) + kZetaMargin * perturb;
  c.height = kHeight * perturb;
  return c;
}

Contour box_contour(double left, double right, double height) {
  if (!(right > left) || height <= 0) throw std::invalid_argument("box_contour: empty box");
  Contour c;
  c.kind = ContourKind::Box;
  c.left = left;
  c.right = right;
  c.height = height;
  return c;
}

Contour sigma_left_open(const LogMagnitude& log_mag, DecayModel decay, double tol, double cap,
                        double perturb, std::optional<double> close_beyond) {
  Contour c;
  c.kind = ContourKind::SigmaLeftOpen;
  c.right = -kSigmaRight * perturb;
  c.height = kHeight * perturb;
  const double r = c.right, h = c.height;
  auto at = [&](double t) {
    return std::max(log_mag(cplx(r - t, h)), log_mag(cplx(r - t, -h)));
  };
  std::optional<double> close_at;
  if (close_beyond) close_at = std::max(0.5, r - (*close_beyond - 0.5));
  const Walk w = walk_out(at, decay, tol, cap, 0.5, close_at);
  c.left = r - w.t;
  c.truncation = {w.t - r, w.tail, w.closed};
  return c;
}

Contour zeta_right_open(const LogMagnitude& log_mag, DecayModel decay, double tol, double cap,
                        double perturb) {
  Contour c;
  c.kind = ContourKind::ZetaRightOpen;
  c.left = -kZetaLeft * perturb;
  c.height = kHeight * perturb;
  const double l = c.left, h = c.height;
  auto at = [&](double t) {
    return std::max(log_mag(cplx(l + t, h)), log_mag(cplx(l + t, -h)));
  };
  const Walk w = walk_out(at, decay, tol, cap, 0.5, std::nullopt);
  c.right = l + w.t;
  c.truncation = {c.right, w.tail, false};
  return c;
}

Contour vertical_line(double abscissa, const LogMagnitude& log_mag, DecayModel decay, double tol,
                      double cap) {
  Contour c;
  c.kind = ContourKind::SigmaVertical;
  c.abscissa = abscissa;
  auto at = [&](double t) {
    return std::max(log_mag(cplx(abscissa, t)), log_mag(cplx(abscissa, -t)));
  };
  const Walk w = walk_out(at, decay, tol, cap, 0.5, std::nullopt);
  c.truncation = {w.t, w.tail, false};
  return c;
}

std::vector<std::pair<cplx, cplx>> contour_segments(const Contour& c) {
  const double h = c.height;
  switch (c.kind) {
    case ContourKind::ZetaClosed:
    case ContourKind::Box: {
      const cplx a(c.left, -h), b(c.right, -h), d(c.right, h), e(c.left, h);
      return {{a, b}, {b, d}, {d, e}, {e, a}};
    }
    case ContourKind::SigmaLeftOpen: {
      const cplx a(c.left, -h), b(c.right, -h), d(c.right, h), e(c.left, h);
      std::vector<std::pair<cplx, cplx>> s{{a, b}, {b, d}, {d, e}};
      if (c.truncation.closed) s.push_back({e, a});
      return s;
    }
    case ContourKind::ZetaRightOpen: {
      const cplx a(c.right, h), b(c.left, h), d(c.left, -h), e(c.right, -h);
      return {{a, b}, {b, d}, {d, e}};
    }
    case ContourKind::SigmaVertical: {
      const double L = c.truncation.bound;
      return {{cplx(c.abscissa, -L), cplx(c.abscissa, L)}};
    }
  }
  return {};
}

NodeSet discretize(const Contour& c, int order, int level) {
  NodeSet out;
  const double h = c.panel_length / std::ldexp(1.0, level);
  for (const auto& [a, b] : contour_segments(c)) {
    const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / h - 1e-9)));
    out.append(segment_nodes(a, b, panels, order));
  }
  return out;
}

}  // namespace perclab
