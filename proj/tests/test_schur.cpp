#include <doctest.h>

#include <cmath>
#include <functional>

#include "perclab/env.hpp"
#include "perclab/rng.hpp"
#include "perclab/schur.hpp"
#include "perclab/special.hpp"

using namespace perclab;

namespace {

// All partitions of weight <= w with at most m parts.
std::vector<Partition> partitions_up_to(int w, int m) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int cap) {
    out.emplace_back(cur);
    if (static_cast<int>(cur.size()) == m) return;
    for (int p = std::min(left, cap); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(w, w);
  return out;
}

}  // namespace

TEST_CASE("schur polynomials by hand") {
  CHECK(schur_bialternant(Partition(), {0.5, 0.25}) == doctest::Approx(1.0));
  CHECK(schur_bialternant(Partition({1}), {0.5, 0.25}) == doctest::Approx(0.75));
  CHECK(schur_bialternant(Partition({2, 1}), {0.5, 0.25}) == doctest::Approx(0.09375).epsilon(1e-14));
  CHECK(schur_jacobi_trudi(Partition({2, 1}), {0.5, 0.25}) == doctest::Approx(0.09375).epsilon(1e-14));
  // repeated variables: s_(2,1)(a, a) = 2a^3
  CHECK(schur_bialternant(Partition({2, 1}), {0.3, 0.3}) == doctest::Approx(2 * 0.027).epsilon(1e-12));
  CHECK_THROWS(schur_bialternant(Partition({1, 1, 1}), {0.5, 0.25}));

  CHECK(skew_schur_tableau_sum(Partition({2, 1}), Partition({2, 1}), {0.4}) == 1.0);
  CHECK(skew_schur_tableau_sum(Partition({2}), Partition({1}), {0.4}) == doctest::Approx(0.4));
  CHECK(skew_schur_tableau_sum(Partition({1}), Partition({2}), {0.4}) == 0.0);
}

TEST_CASE("tableau sums agree with the bialternant") {
  CounterRng rng(12, 0);
  const std::vector<double> x{0.2 + 0.5 * rng.uniform_open(), 0.1 + 0.5 * rng.uniform_open(),
                              0.05 + 0.5 * rng.uniform_open()};
  for (const Partition& lambda : partitions_up_to(6, 3)) {
    const double a = skew_schur_tableau_sum(lambda, Partition(), x);
    CHECK(a == doctest::Approx(schur_bialternant(lambda, x)).epsilon(1e-12));
  }
}

TEST_CASE("schur process pmf") {
  SchurProcessParams p{2, {0.3, 0.3}, {{0.3, 0.3}, {0.3}}};
  double empty = 1.0;
  for (double xi : p.x)
    for (const auto& yk : p.y)
      for (double yj : yk) empty *= 1 - xi * yj;
  CHECK(schur_process_pmf(p, {Partition(), Partition()}) == doctest::Approx(empty).epsilon(1e-14));
  CHECK(schur_process_pmf(p, {Partition({2}), Partition({1})}) == 0.0);
  // block 2 has one label, which cannot fill a column of two cells
  CHECK(schur_process_pmf(p, {Partition({1}), Partition({2, 2})}) == 0.0);
  CHECK(schur_process_pmf(p, {Partition({1}), Partition({2})}) > 0.0);

  const NormalizationReport r = schur_process_normalization(p, 12);
  CHECK(r.mass >= 0.999);
  CHECK(r.mass + r.tail == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("exponential limit density") {
  const ExpLimitParams one{1, {3}, {2}};
  for (double lam : {0.1, 0.7, 2.5}) {
    const double beta_log = std::exp(log_gamma(5.0) - log_gamma(3.0) - log_gamma(2.0)) * std::exp(-4 * lam) *
                            (std::exp(lam) - 1);
    CHECK(exp_limit_density(one, {{lam}}) == doctest::Approx(beta_log).epsilon(1e-12));
  }
  CHECK(exp_limit_density(ExpLimitParams{1, {1}, {1}}, {{1.3}}) == doctest::Approx(std::exp(-1.3)).epsilon(1e-13));
  const ExpLimitParams two{2, {1, 1}, {2, 1}};
  CHECK(exp_limit_density(two, {{1.0, 0.5}, {0.8, 0.6}}) == 0.0);
  CHECK(exp_limit_density(two, {{1.0, 0.5}, {1.2, 0.6}}) > 0.0);
  CHECK_THROWS_AS(exp_limit_density(one, {{0.0}}), std::domain_error);
}

TEST_CASE("exponential limit marginals") {
  CHECK(exp_limit_marginal_cdf_lambda1(ExpLimitParams{1, {1}, {1}}, 1, 1.0) ==
        doctest::Approx(1 - std::exp(-1.0)).epsilon(1e-8));
  CHECK(exp_limit_marginal_cdf_lambda1(ExpLimitParams{1, {1}, {2}}, 1, 1.0) ==
        doctest::Approx(1 - 2 * std::exp(-1.0) + std::exp(-2.0)).epsilon(1e-8));
  CHECK(exp_limit_marginal_cdf_lambda1(ExpLimitParams{1, {1}, {1}}, 1, 0.0) == 0.0);

  const ExpLimitParams p{2, {1}, {2}};
  const double s = 3.0;
  const McEstimate mc = monte_carlo_joint_cdf(LayeredSpec(2, {1}, {2}), {1}, {s}, 100000, 21);
  CHECK(std::abs(exp_limit_marginal_cdf_lambda1(p, 1, s) - mc.estimate) <= mc.dkw_band);
}
