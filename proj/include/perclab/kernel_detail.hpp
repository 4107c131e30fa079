#pragma once

#include <functional>
#include <vector>

#include "perclab/kernels.hpp"

namespace perclab::detail {

// log prod_{m < count} (z + a + m).
cplx log_rising(cplx z, double a, int count);
// sum_{j < upto} log Gamma(z + nu_j), grouped by repeated nu.
cplx log_gamma_sum(cplx z, const std::vector<int>& nu, int upto);
// t as an integer in [1, max_time]; throws std::out_of_range otherwise.
int integer_time(double t, int max_time);

// (1 / 2 pi i) * integral of exp(logf) along the upward line through the real
// minimum of Re logf right of left_limit (all singularities lie left of it).
double saddle_line_integral(const std::function<cplx(cplx)>& logf, double left_limit, DecayModel decay,
                            const KernelOptions& opt, int level = 1);

}  // namespace perclab::detail
