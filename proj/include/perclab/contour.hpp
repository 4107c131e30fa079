#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "perclab/quadrature.hpp"

namespace perclab {

enum class ContourKind { ZetaClosed, ZetaRightOpen, SigmaLeftOpen, SigmaVertical, Box };

// Asymptotic decay of |integrand| along an open contour.
enum class DecayKind { Power, Exponential, Gaussian };
struct DecayModel {
  DecayKind kind = DecayKind::Exponential;
  double rate = 0.0;  // power exponent for DecayKind::Power
};

struct TruncationReport {
  double bound = 0.0;          // M, W, or half length of a vertical line
  double tail_estimate = 0.0;  // relative to the largest sampled magnitude
  bool closed = false;         // finite pole set, contour closed beyond it
};

struct Contour {
  ContourKind kind = ContourKind::ZetaClosed;
  double left = 0.0, right = 0.0;  // real extent of rectangles
  double height = 0.25;            // half height of rectangles
  double abscissa = 0.0;           // vertical lines
  TruncationReport truncation;
  double panel_length = 0.25;
};

// Default rectangle offsets; perturb scales all of them (1.0 is canonical).
constexpr double kZetaLeft = 0.25;
constexpr double kZetaMargin = 0.5;
constexpr double kSigmaRight = 0.375;
constexpr double kHeight = 0.25;

// Counterclockwise rectangle around 0, 1, ..., n - 1.
Contour zeta_closed_contour(int n, double perturb = 1.0);
// Counterclockwise rectangle [left, right] x [-height, height].
Contour box_contour(double left, double right, double height);

// log |integrand| evaluated on the contour, coupling included.
using LogMagnitude = std::function<double(cplx)>;

// Left-open rectangle truncated at Re = -M; closed at -M when every pole lies
// to the right of close_beyond and the walk reaches it first.
Contour sigma_left_open(const LogMagnitude& log_mag, DecayModel decay, double tol, double cap,
                        double perturb = 1.0, std::optional<double> close_beyond = {});
Contour zeta_right_open(const LogMagnitude& log_mag, DecayModel decay, double tol, double cap,
                        double perturb = 1.0);
// Upward vertical line Re = abscissa.
Contour vertical_line(double abscissa, const LogMagnitude& log_mag, DecayModel decay, double tol,
                      double cap);

std::vector<std::pair<cplx, cplx>> contour_segments(const Contour& c);
// level halves the panel length level times.
NodeSet discretize(const Contour& c, int order = 16, int level = 0);

}  // namespace perclab
