#include <doctest.h>

#include <cmath>
#include <sstream>

#include "perclab/env.hpp"
#include "perclab/rng.hpp"

using namespace perclab;

TEST_CASE("layered spec rates and widths") {
  const LayeredSpec s(2, {3}, {2});
  CHECK(s.rate(1, 1) == 3.0);
  CHECK(s.rate(1, 2) == 4.0);
  CHECK(s.rate(2, 1) == 4.0);
  CHECK(s.rate(2, 2) == 5.0);
  const LayeredSpec t(2, {1, 4}, {2, 3});
  CHECK(t.width(2) == 5);
  CHECK(t.block_of(3) == 2);
  CHECK(t.rate(1, 3) == 4.0);  // first column of block 2
  CHECK_THROWS_AS(LayeredSpec(3, {1}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(LayeredSpec(1, {0}, {2}), std::invalid_argument);
}

TEST_CASE("exponential sampling") {
  const LayeredSpec s(1, {1}, {1});
  double sum = 0;
  const int draws = 1000000;
  for (int k = 0; k < draws; ++k) sum += sample_exponential_blocks(s, 1, static_cast<std::uint64_t>(k)).at(1, 1);
  CHECK(std::abs(sum / draws - 1.0) < 0.01);

  const LayeredSpec t(2, {1, 2}, {2, 3});
  const ClockArray a = sample_exponential_blocks(t, 2, 11), b = sample_exponential_blocks(t, 2, 11);
  CHECK(a == b);
  CHECK(a.values().size() == 10);
  for (double v : a.values()) CHECK(v > 0);
  CHECK_THROWS_AS(sample_exponential_blocks(t, 3, 1), std::out_of_range);
}

TEST_CASE("geometric sampling") {
  const LayeredSpec s(1, {1}, {1});
  int zeros = 0;
  double sum = 0;
  const int draws = 1000000;
  CounterRng rng(5, 0);
  for (int k = 0; k < draws; ++k) sum += static_cast<double>(rng.geometric(0.5));
  CHECK(std::abs(sum / draws - 1.0) < 0.01);
  for (int k = 0; k < draws; ++k) zeros += sample_geometric_blocks(s, 1, {0.5}, {{0.5}}, k).at(1, 1) == 0.0;
  CHECK(std::abs(zeros / double(draws) - 0.75) < 0.002);

  const auto [x, y] = geometric_parameters_for_exponential_limit(s, 10);
  CHECK(x[0] == 1.0);
  CHECK(y[0][0] == doctest::Approx(0.904837).epsilon(1e-6));
}

TEST_CASE("geometric draws approach the exponential law") {
  const LayeredSpec s(1, {1}, {1});
  const int N = 1000, draws = 100000;
  const auto [x, y] = geometric_parameters_for_exponential_limit(s, N);
  int below = 0;
  for (int k = 0; k < draws; ++k) below += sample_geometric_blocks(s, 1, x, y, k).at(1, 1) / N <= 1.0;
  CHECK(std::abs(below / double(draws) - (1 - std::exp(-1.0))) < 0.01);
}

TEST_CASE("last passage time") {
  CHECK(last_passage_time(ClockArray(1, {1}, {3.5})) == 3.5);
  CHECK(last_passage_time(ClockArray(2, {2}, {1, 2, 3, 4})) == 8.0);
  CHECK(last_passage_time(ClockArray(1, {4}, {1, 2, 3, 4})) == 10.0);

  // every 2x2 integer array with entries in {0, 1, 2}
  for (int code = 0; code < 81; ++code) {
    std::vector<double> v;
    for (int c = code, k = 0; k < 4; ++k, c /= 3) v.push_back(c % 3);
    const ClockArray a(2, {2}, v, ClockMode::Geometric);
    CHECK(last_passage_time(a) == brute_force_lpp(a));
  }
}

TEST_CASE("last passage invariants on random arrays") {
  const LayeredSpec s(3, {1, 2, 1}, {3, 2, 4});
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const ClockArray a = sample_exponential_blocks(s, 3, seed);
    const auto proc = last_passage_process(a, {1, 2, 3});
    for (int k = 1; k <= 3; ++k) CHECK(proc[k - 1] == last_passage_time(a.prefix(k)));
    CHECK(proc[0] <= proc[1]);
    CHECK(proc[1] <= proc[2]);
    CHECK(last_passage_time(a) == brute_force_lpp(a));

    std::vector<double> v = a.values();
    v[seed % v.size()] += 0.5;
    CHECK(last_passage_time(ClockArray(3, {3, 2, 4}, v)) >= proc[2]);
  }
}

TEST_CASE("clock array csv round trip") {
  const ClockArray a = sample_exponential_blocks(LayeredSpec(2, {1, 3}, {2, 2}), 2, 3);
  std::stringstream ss;
  a.write_csv(ss);
  CHECK(ss.str().rfind("2,2,2\n", 0) == 0);
  CHECK(ClockArray::read_csv(ss) == a);
}

TEST_CASE("monte carlo estimates") {
  const LayeredSpec s(1, {1}, {1});
  const McEstimate m = monte_carlo_joint_cdf(s, {1}, {1.0}, 100000, 9);
  CHECK(std::abs(m.estimate - (1 - std::exp(-1.0))) <= m.dkw_band);
  CHECK(m.dkw_band == doctest::Approx(std::sqrt(std::log(2 / 0.05) / (2 * 100000.0))));
  CHECK(monte_carlo_joint_cdf(s, {1}, {0.0}, 1000, 1).estimate == 0.0);
  CHECK(monte_carlo_joint_cdf(s, {1}, {1e9}, 1000, 1).estimate == 1.0);

  const LayeredSpec t(2, {1, 2}, {2, 2});
  const McEstimate par = monte_carlo_joint_cdf(t, {1, 2}, {3, 5}, 20000, 4, Execution::Parallel);
  const McEstimate ser = monte_carlo_joint_cdf(t, {1, 2}, {3, 5}, 20000, 4, Execution::Serial);
  CHECK(par.estimate == ser.estimate);
  CHECK(McEstimate::from_json(par.to_json()).estimate == par.estimate);
  CHECK(McEstimate::from_json(par.to_json()).seed == 4);
}

TEST_CASE("exact single-row law") {
  const LayeredSpec one(1, {1}, {1}), two(1, {1}, {2});
  CHECK(single_row_lpp_cdf(one, 1, 1.0) == doctest::Approx(1 - std::exp(-1.0)).epsilon(1e-12));
  CHECK(single_row_lpp_cdf(two, 1, 1.0) ==
        doctest::Approx(1 - 2 * std::exp(-1.0) + std::exp(-2.0)).epsilon(1e-12));
  CHECK(single_row_lpp_cdf(two, 1, 0.0) == 0.0);
}

TEST_CASE("critical centering") {
  const double c = critical_centering(4, 1, 1, 1.0);
  CHECK(c == doctest::Approx(std::log(4.0) + std::log(2.0) + 0.25 - 1.0 / 8));
  CHECK(critical_rescale(4, 1, 1, 1.0, c) == doctest::Approx(0.0));
  // n = 1: the log n and 1/(2n) terms leave +1/2
  CHECK(critical_rescale(1, 3, 2, 1.0, 0.0) ==
        doctest::Approx(-3 * (std::log(5.0 / 3) + 2.0 / 30) + 0.5).epsilon(1e-14));
  CHECK_THROWS(critical_rescale(2, 2, 2, 0.2, 1.0));
}
