#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kernel_grid.hpp"
#include "perclab/env.hpp"
#include "perclab/kernels.hpp"

using namespace perclab;

TEST_CASE("backends agree on the sample grids") {
  for (const auto& c : testing::kernel_cases()) {
    for (const auto& p : c.points) {
      const double a = (*c.kernel)(p.q, p.x, p.r, p.y, Backend::Quadrature).value;
      const double b = (*c.kernel)(p.q, p.x, p.r, p.y, Backend::Residue).value;
      INFO(c.name, " q=", p.q, " x=", p.x, " r=", p.r, " y=", p.y);
      CHECK(std::abs(a - b) <= 1e-8 * std::abs(b));
    }
  }
}

TEST_CASE("contour perturbation leaves values unchanged") {
  for (double perturb : {0.9, 1.1}) {
    KernelOptions o;
    o.perturb = perturb;
    const auto moved = testing::kernel_cases(o), base = testing::kernel_cases();
    for (std::size_t c = 0; c < base.size(); ++c)
      for (const auto& p : base[c].points) {
        const double a = (*moved[c].kernel)(p.q, p.x, p.r, p.y, Backend::Quadrature).value;
        const double b = (*base[c].kernel)(p.q, p.x, p.r, p.y, Backend::Quadrature).value;
        CHECK(std::abs(a - b) <= 1e-8 * std::abs(b));
      }
  }
  for (double abscissa : {-0.25, -1.0}) {
    KernelOptions o;
    o.sigma_abscissa = abscissa;
    const KernelPtr moved = make_critical(o), base = make_critical();
    for (const auto& [tau, x, t, y] : {std::array{1.0, 0.0, 2.0, 0.0}, std::array{1.5, 0.7, 1.0, -0.4}}) {
      const double a = (*moved)(tau, x, t, y, Backend::Quadrature).value;
      const double b = (*base)(tau, x, t, y, Backend::Quadrature).value;
      CHECK(std::abs(a - b) <= 1e-8 * std::abs(b));
    }
  }
}

TEST_CASE("single-cell kernel") {
  const KernelValue v = k_truncated_unitary_log(1, {1}, {1}, 1, 1.0, 1, 1.0);
  CHECK(v.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(v.est_error < 1e-10);
  const KernelValue w = k_truncated_unitary_log(1, {1}, {1}, 1, 1.0, 1, 1.0, Backend::Quadrature);
  CHECK(w.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("first terms") {
  const KernelPtr log_k = make_truncated_unitary_log(2, {1, 2}, {2, 3});
  CHECK(log_k->first_term(1, 2.0, 2, 1.0, Backend::Residue) == 0.0);    // x > y
  CHECK(log_k->first_term(1, 1.0, 2, 2.0, Backend::Residue) != 0.0);
  CHECK(log_k->first_term(2, 1.0, 1, 2.0, Backend::Residue) == 0.0);    // r <= q

  const KernelPtr gin = make_ginibre(2, {1, 1});
  for (const auto& [x, y] : {std::pair{0.5, 0.5}, std::pair{1.2, 0.3}, std::pair{0.4, 2.0}}) {
    CHECK(gin->first_term(1, x, 2, y, Backend::Residue) == doctest::Approx(-std::exp(-y / x) / x).epsilon(1e-12));
    CHECK(gin->first_term(1, x, 2, y, Backend::Quadrature) == doctest::Approx(-std::exp(-y / x) / x).epsilon(1e-10));
  }
  CHECK(gin->first_term(2, 0.5, 1, 0.5, Backend::Residue) == 0.0);
  const KernelPtr he = make_hard_edge({1, 1});
  CHECK(he->first_term(1, 0.7, 2, 1.1, Backend::Residue) ==
        doctest::Approx(gin->first_term(1, 0.7, 2, 1.1, Backend::Residue)).epsilon(1e-13));

  const KernelPtr crit = make_critical();
  CHECK(crit->first_term(1, 0.3, 2, 0.3, Backend::Residue) ==
        doctest::Approx(-1 / std::sqrt(2 * std::numbers::pi)).epsilon(1e-12));
  CHECK(crit->first_term(2, 0.3, 1, 0.3, Backend::Residue) == 0.0);
  CHECK(crit->first_term(1, 0.0, 2, 5.0, Backend::Residue) != 0.0);  // the Gaussian never vanishes
}

TEST_CASE("backend agreement at the reference points") {
  auto rel = [](const KernelValue& a, const KernelValue& b) { return std::abs(a.value - b.value) / std::abs(b.value); };
  CHECK(rel(k_ginibre(2, {1, 1}, 1, 0.5, 1, 0.5, Backend::Quadrature), k_ginibre(2, {1, 1}, 1, 0.5, 1, 0.5)) < 1e-8);
  CHECK(rel(k_truncated_unitary_mult(2, {1, 3}, {2, 1}, 1, 0.3, 2, 0.6, Backend::Quadrature),
            k_truncated_unitary_mult(2, {1, 3}, {2, 1}, 1, 0.3, 2, 0.6)) < 1e-8);
  CHECK(rel(k_hard_edge({2, 1}, 2, 0.8, 1, 1.4, Backend::Quadrature), k_hard_edge({2, 1}, 2, 0.8, 1, 1.4)) < 1e-8);
  CHECK(rel(k_critical(1, 0, 2, 0, Backend::Quadrature), k_critical(1, 0, 2, 0)) < 1e-8);
  CHECK(rel(k_critical(2, 0.4, 1, -0.3, Backend::Quadrature), k_critical(2, 0.4, 1, -0.3)) < 1e-8);
}

TEST_CASE("argument checks") {
  CHECK_THROWS(k_truncated_unitary_log(1, {1}, {1}, 2, 1.0, 1, 1.0));
  CHECK_THROWS(k_truncated_unitary_mult(1, {1}, {1}, 1, 1.5, 1, 0.5));
  CHECK_THROWS(k_ginibre(1, {1}, 1, -1.0, 1, 0.5));
  CHECK_THROWS(make_truncated_unitary_log(2, {1}, {1}));
  CHECK_THROWS(scaled_hard_to_soft_kernel(4, 0.1, 0, 1, 0));
}

TEST_CASE("centered critical kernel equals the conjugated log kernel") {
  const int n = 2, nu = 2, ell = 3;
  const double tau = 1.0, t = 2.0;
  const int Q = scaled_time(tau, nu), R = scaled_time(t, nu);
  const double gt = critical_centering(n, nu, ell, t), gq = critical_centering(n, nu, ell, tau);
  const double conj = (R - Q) * (std::lgamma(nu + ell) - std::lgamma(nu));
  for (const auto& [x, y] : {std::pair{0.2, 0.1}, std::pair{-0.5, 0.8}, std::pair{1.0, -0.3}}) {
    const double lhs = scaled_critical_kernel(n, nu, ell, tau, x, t, y).value;
    const double rhs = std::exp(conj) * k_truncated_unitary_log(n, std::vector<int>(R, nu), std::vector<int>(R, ell), Q,
                                                                x + gq, R, y + gt)
                                            .value;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    CHECK(scaled_critical_kernel(n, nu, ell, tau, x, t, y, Backend::Quadrature).value ==
          doctest::Approx(lhs).epsilon(1e-8));
  }
}

TEST_CASE("scaled kernels move toward their limits") {
  const double he = k_hard_edge({1}, 1, 1.0, 1, 1.0).value;
  const double e1 = std::abs(scaled_hard_edge_tu_kernel(2, {1}, {64}, 1, 1.0, 1, 1.0).value - he);
  const double e2 = std::abs(scaled_hard_edge_tu_kernel(3, {1}, {256}, 1, 1.0, 1, 1.0).value - he);
  CHECK(e2 < e1);
  const double crit = k_critical(1, 0, 2, 0).value;
  const double c1 = std::abs(scaled_hard_to_soft_kernel(8, 1, 0, 2, 0).value - crit);
  const double c2 = std::abs(scaled_hard_to_soft_kernel(16, 1, 0, 2, 0).value - crit);
  CHECK(c2 < c1);
  const double d1 = std::abs(scaled_critical_kernel(2, 8, 64, 1, 0, 2, 0).value - crit);
  const double d2 = std::abs(scaled_critical_kernel(3, 16, 256, 1, 0, 2, 0).value - crit);
  CHECK(d2 < d1);
}
