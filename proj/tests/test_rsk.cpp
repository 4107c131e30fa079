#include <doctest.h>

#include <algorithm>

#include "perclab/rng.hpp"
#include "perclab/rsk.hpp"

using namespace perclab;

namespace {

ClockArray random_integer_array(int n, std::vector<int> blocks, int max_entry, std::uint64_t seed) {
  CounterRng rng(seed, 17);
  long long cols = 0;
  for (int l : blocks) cols += l;
  std::vector<double> v(n * cols);
  for (double& x : v) x = static_cast<double>(rng.next() % (max_entry + 1));
  return ClockArray(n, std::move(blocks), std::move(v), ClockMode::Geometric);
}

Tableau straight(std::vector<std::vector<int>> rows) { return Tableau(Partition(), std::move(rows)); }

}  // namespace

TEST_CASE("partitions") {
  const Partition p({3, 1, 0, 0});
  CHECK(p.length() == 2);
  CHECK(p.weight() == 4);
  CHECK(p.to_string() == "3,1");
  CHECK(Partition::parse("3,1") == p);
  CHECK(p.contains(Partition({2, 1})));
  CHECK_FALSE(p.contains(Partition({1, 1, 1})));
  CHECK_THROWS_AS(Partition({1, 2}), std::invalid_argument);
}

TEST_CASE("row insertion by hand") {
  auto [t1, p1] = row_insert(Tableau(), 1);
  CHECK(t1 == straight({{1}}));
  CHECK(p1 == Path{{1, 1}});
  CHECK(row_insert(straight({{2}}), 1).first == straight({{1}, {2}}));
  auto [t3, p3] = row_insert(straight({{1}}), 2);
  CHECK(t3 == straight({{1, 2}}));
  CHECK(p3 == Path{{1, 2}});
}

TEST_CASE("insertion path labels increase") {
  CounterRng rng(3, 0);
  Tableau t;
  for (int step = 0; step < 400; ++step) {
    auto [next, path] = row_insert(t, 1 + static_cast<int>(rng.next() % 6));
    CHECK(next.valid());
    for (std::size_t k = 1; k < path.size(); ++k) {
      const auto [r0, c0] = path[k - 1];
      const auto [r1, c1] = path[k];
      CHECK(r1 == r0 + 1);
      CHECK(next.rows()[r0 - 1][c0 - 1] < next.rows()[r1 - 1][c1 - 1]);
    }
    t = next;
  }
}

TEST_CASE("bounded insertion and erasing") {
  const Tableau t = straight({{1, 2, 2}, {3}});
  CHECK(bounded_insert(t, 5, 4) == t);
  CHECK(bounded_insert(t, 2, 4) == row_insert(t, 2).first);
  CHECK(erase_above(straight({{1, 2}}), 1) == straight({{1}}));
  CHECK(erase_above(t, 3) == t);

  CounterRng rng(8, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const int k = 1 + static_cast<int>(rng.next() % 5);
    Tableau full, bounded;
    const int len = 1 + static_cast<int>(rng.next() % 12);
    for (int m = 0; m < len; ++m) {
      const int v = 1 + static_cast<int>(rng.next() % 8);
      full = row_insert(full, v).first;
      bounded = bounded_insert(bounded, v, k);
    }
    CHECK(bounded == erase_above(full, k));
    CHECK(erase_above(full, k).valid());
    const int k2 = 1 + static_cast<int>(rng.next() % 8);
    CHECK(erase_above(erase_above(full, k), k2) == erase_above(full, std::min(k, k2)));
  }
}

TEST_CASE("rsk by hand") {
  const RskPair a = rsk_correspondence(ClockArray(1, {1}, {2}, ClockMode::Geometric));
  CHECK(a.P == straight({{1, 1}}));
  CHECK(a.Q == straight({{1, 1}}));
  const RskPair b = rsk_correspondence(ClockArray(2, {2}, {0, 1, 1, 0}, ClockMode::Geometric));
  CHECK(b.P == straight({{1}, {2}}));
  CHECK(b.Q == straight({{1}, {2}}));
  const RskPair z = rsk_correspondence(ClockArray(2, {2}, {0, 0, 0, 0}, ClockMode::Geometric));
  CHECK(z.P.outer().empty());
  CHECK(z.Q.outer().empty());
  CHECK(lambda1_equals_lpp_check(ClockArray(1, {1}, {2}, ClockMode::Geometric)));
  CHECK(lambda1_equals_lpp_check(ClockArray(1, {2}, {1, 1}, ClockMode::Geometric)));
  CHECK_THROWS_AS(rsk_correspondence(ClockArray(1, {1}, {0.5})), std::invalid_argument);
}

TEST_CASE("rsk shape and content") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const ClockArray a = random_integer_array(3, {2, 3}, 3, seed);
    const RskPair pq = rsk_correspondence(a);
    CHECK(pq.P.valid());
    CHECK(pq.Q.valid());
    CHECK(pq.P.outer() == pq.Q.outer());
    auto typeP = pq.P.type(), typeQ = pq.Q.type();
    typeP.resize(a.cols(), 0);
    typeQ.resize(a.rows(), 0);
    for (long long j = 1; j <= a.cols(); ++j) {
      long long col = 0;
      for (int i = 1; i <= a.rows(); ++i) col += a.count(i, j);
      CHECK(typeP[j - 1] == col);
    }
    for (int i = 1; i <= a.rows(); ++i) {
      long long row = 0;
      for (long long j = 1; j <= a.cols(); ++j) row += a.count(i, j);
      CHECK(typeQ[i - 1] == row);
    }
  }
}

TEST_CASE("first row equals last-passage time") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed)
    CHECK(lambda1_equals_lpp_check(random_integer_array(3, {5}, 4, seed)));
}

TEST_CASE("restriction commutes with erasing") {
  for (std::uint64_t seed = 0; seed < 500; ++seed)
    CHECK(restriction_commutes_check(random_integer_array(2, {2, 3}, 3, seed), 1));
  CHECK(restriction_commutes_check(ClockArray(2, {1, 1}, {0, 0, 0, 0}, ClockMode::Geometric), 1));
  const ClockArray single(2, {1, 1}, {0, 1, 0, 0}, ClockMode::Geometric);
  CHECK(rsk_correspondence(single.prefix(1)).P.outer().empty());
  CHECK(erase_above(rsk_correspondence(single).P, 1).outer().empty());
  CHECK(restriction_commutes_check(single, 1));
}

TEST_CASE("tableau printing") {
  CHECK(straight({{1, 2}, {3}}).to_string() == "1 2\n3\n");
  CHECK(Tableau(Partition({1}), {{2}, {1}}).to_string() == ". 2\n1\n");
}
