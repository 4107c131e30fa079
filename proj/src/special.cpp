#include "perclab/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace perclab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLogPi = 1.1447298858494002;
constexpr double kHalfLog2Pi = 0.91893853320467274;

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_pole(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// Stirling series with recurrence shift, used when |z| is large.
cplx log_gamma_stirling(cplx z) {
  cplx shift = 0.0;
  while (std::abs(z) < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const cplx iz = 1.0 / z;
  const cplx iz2 = iz * iz;
  const cplx series =
      iz * (1.0 / 12 +
            iz2 * (-1.0 / 360 +
                   iz2 * (1.0 / 1260 +
                          iz2 * (-1.0 / 1680 +
                                 iz2 * (1.0 / 1188 + iz2 * (-691.0 / 360360 + iz2 * (1.0 / 156)))))));
  return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + series - shift;
}

cplx log_gamma_lanczos(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

double sinpi(double x) {
  const double r = x - 2.0 * std::round(0.5 * x);
  return std::sin(kPi * r);
}

double cospi(double x) {
  const double r = x - 2.0 * std::round(0.5 * x);
  return std::cos(kPi * r);
}

}  // namespace

cplx log_sinpi(cplx z) {
  const double a = z.real();
  const double b = z.imag();
  const double e = std::exp(-2.0 * kPi * std::abs(b));
  // sin(pi z) scaled by exp(-pi |b|)
  const double re = sinpi(a) * (1.0 + e) * 0.5;
  const double im = cospi(a) * (b >= 0 ? 1.0 : -1.0) * (1.0 - e) * 0.5;
  const double mod = std::hypot(re, im);
  if (mod == 0.0) throw std::domain_error("log_sinpi: zero of sin(pi z)");
  return {kPi * std::abs(b) + std::log(mod), std::atan2(im, re)};
}

cplx log_gamma(cplx z) {
  if (is_pole(z)) throw std::domain_error("log_gamma: pole at non-positive integer");
  if (z.real() < 0.5) {
    // Reflection with the branch correction that keeps the result continuous
    // across the negative real axis.
    const double tmp = std::copysign(2.0 * kPi, z.imag()) * std::floor(0.5 * z.real() + 0.25);
    return cplx(kLogPi, tmp) - log_sinpi(z) - log_gamma(1.0 - z);
  }
  if (std::abs(z) > 40.0) return log_gamma_stirling(z);
  return log_gamma_lanczos(z);
}

double log_gamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) throw std::domain_error("log_gamma: pole at non-positive integer");
  return std::lgamma(x);
}

cplx log_rgamma(cplx z) {
  if (is_pole(z)) return {-std::numeric_limits<double>::infinity(), 0.0};
  return -log_gamma(z);
}

cplx F_a(double a, cplx z) {
  if (a <= 0) throw std::invalid_argument("F_a: a must be positive");
  return log_gamma(z + a) - std::lgamma(a) - z * std::log(a) + z / (2.0 * a);
}

cplx h_alpha(double nu, double ell, double p, cplx eta) {
  return std::exp(p * (F_a(nu, eta) - F_a(nu + ell, eta)));
}

}  // namespace perclab
