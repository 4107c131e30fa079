#include <doctest.h>

#include <cmath>

#include "perclab/env.hpp"
#include "perclab/fredholm.hpp"

using namespace perclab;

namespace {

FredholmProblem single_row(int ell, bool mult, double s) {
  FredholmProblem p;
  p.kernel = mult ? make_truncated_unitary_mult(1, {1}, {ell}) : make_truncated_unitary_log(1, {1}, {ell});
  p.times = {1};
  p.thresholds = {s};
  return p;
}

FredholmProblem two_time(bool mult, double s1, double s2) {
  FredholmProblem p;
  p.kernel = mult ? make_truncated_unitary_mult(2, {1, 2}, {2, 2}) : make_truncated_unitary_log(2, {1, 2}, {2, 2});
  p.times = {1, 2};
  p.thresholds = {s1, s2};
  return p;
}

}  // namespace

TEST_CASE("single-row laws") {
  const double e1 = 1 - std::exp(-1.0), e2 = 1 - 2 * std::exp(-1.0) + std::exp(-2.0);
  for (bool mult : {false, true}) {
    CHECK(std::abs(nystrom_gap_probability(single_row(1, mult, 1.0)).value - e1) < 1e-6);
    CHECK(std::abs(nystrom_gap_probability(single_row(2, mult, 1.0)).value - e2) < 1e-6);
  }
  for (double s : {0.25, 0.5, 2.0}) {
    const LayeredSpec spec(1, {1}, {2});
    const GapResult r = nystrom_gap_probability(single_row(2, false, s));
    CHECK(std::abs(r.value - single_row_lpp_cdf(spec, 1, s)) < 1e-6);
    CHECK(r.converged);
    CHECK(r.rcond > 0);
    CHECK(r.est_error < 1e-6);
  }
}

TEST_CASE("vanishing near zero") {
  double prev = 1.0;
  for (double s : {0.1, 0.01, 0.001}) {
    const double v = nystrom_gap_probability(single_row(2, false, s)).value;
    CHECK(v < prev);
    CHECK(v > -1e-8);
    prev = v;
  }
  CHECK(prev < 1e-5);
}

TEST_CASE("series expansion") {
  const FredholmProblem p1 = single_row(2, false, 0.7);
  CHECK(series_gap_probability(p1, 0).value == 1.0);
  CHECK(std::abs(series_gap_probability(p1, 1).value - nystrom_gap_probability(p1).value) < 1e-6);

  FredholmProblem p2;
  p2.kernel = make_truncated_unitary_log(2, {1}, {3});
  p2.times = {1};
  p2.thresholds = {2.0};
  CHECK(std::abs(series_gap_probability(p2, 2).value - nystrom_gap_probability(p2).value) < 1e-6);
  CHECK_THROWS(series_gap_probability(p2, 4));
}

TEST_CASE("log and multiplicative kernels give the same determinant") {
  for (const auto& [s1, s2] : {std::pair{3.0, 5.0}, std::pair{1.5, 2.5}}) {
    const double a = nystrom_gap_probability(two_time(false, s1, s2)).value;
    const double b = nystrom_gap_probability(two_time(true, s1, s2)).value;
    CHECK(std::abs(a - b) < 1e-6);
  }
  FredholmProblem a, b;
  a.kernel = make_truncated_unitary_log(2, {2}, {3});
  b.kernel = make_truncated_unitary_mult(2, {2}, {3});
  a.times = b.times = {1};
  a.thresholds = b.thresholds = {1.2};
  CHECK(std::abs(nystrom_gap_probability(a).value - nystrom_gap_probability(b).value) < 1e-6);
}

TEST_CASE("two-time probabilities are monotone and bounded") {
  const std::vector<double> s1{1.0, 2.0, 3.5}, s2{2.0, 3.0, 4.5};
  std::vector<std::vector<double>> v(3, std::vector<double>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      v[i][j] = nystrom_gap_probability(two_time(false, s1[i], s2[j])).value;
      CHECK(v[i][j] >= -1e-8);
      CHECK(v[i][j] <= 1 + 1e-8);
    }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i + 1 < 3) CHECK(v[i + 1][j] >= v[i][j] - 1e-8);
      if (j + 1 < 3) CHECK(v[i][j + 1] >= v[i][j] - 1e-8);
    }
}

TEST_CASE("windows and execution") {
  FredholmProblem p = two_time(false, 2.0, 3.0);
  const auto w = select_windows(p);
  REQUIRE(w.size() == 2);
  for (double lam : w) {
    CHECK(lam > 0);
    CHECK(lam <= 40);
  }
  const double par = nystrom_gap_probability(p).value;
  p.parallel = false;
  CHECK(nystrom_gap_probability(p).value == par);

  p.max_nodes = p.nodes;
  CHECK_THROWS_AS(nystrom_gap_probability(p), std::runtime_error);

  FredholmProblem bad = two_time(false, 2.0, 3.0);
  bad.times = {2, 1};
  CHECK_THROWS(nystrom_gap_probability(bad));
  bad.times = {1, 2};
  bad.thresholds = {1.0};
  CHECK_THROWS(nystrom_gap_probability(bad));
}

TEST_CASE("critical process") {
  const std::vector<double> ts{0.5, 1.0, 1.5, 2.0, 3.0}, ss{-2, -1, 0, 1, 2};
  for (double t : ts) {
    double prev = -1.0;
    for (double s : ss) {
      const double v = critical_fidi({t}, {s}).value;
      CHECK(v >= -1e-8);
      CHECK(v <= 1 + 1e-8);
      CHECK(v >= prev - 1e-8);
      prev = v;
    }
  }
  CHECK(std::abs(critical_fidi({1.0}, {8.0}).value - 1.0) < 1e-4);
  const double joint = critical_fidi({1.0, 2.0}, {0.5, 0.5}).value;
  CHECK(joint <= critical_fidi({1.0}, {0.5}).value + 1e-8);
  CHECK(joint <= critical_fidi({2.0}, {0.5}).value + 1e-8);
}
