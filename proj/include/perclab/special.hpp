#pragma once

#include <complex>

namespace perclab {

using cplx = std::complex<double>;

// Principal branch of log Gamma, analytic off the non-positive real axis.
// Throws std::domain_error at the poles z = 0, -1, -2, ...
cplx log_gamma(cplx z);
double log_gamma(double x);

// log sin(pi z) on the principal branch, safe for large |Im z|.
cplx log_sinpi(cplx z);

// F_a(z) = log Gamma(z + a) - log Gamma(a) - z log a + z / (2a).
cplx F_a(double a, cplx z);

// h(eta; p) = exp(p (F_nu(eta) - F_{nu + ell}(eta))).
cplx h_alpha(double nu, double ell, double p, cplx eta);

// log(1/Gamma(z)); finite (returns -inf real part) at the poles.
cplx log_rgamma(cplx z);

}  // namespace perclab
