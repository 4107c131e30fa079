#pragma once

#include <cstdint>

namespace perclab {

// Counter-based stream: splitmix64 seeded by a hash of (seed, stream).
// Streams with different ids are statistically independent, which lets
// Monte Carlo samples be drawn in any order on any number of threads.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();
  // Uniform on (0, 1].
  double uniform_open();
  double exponential(double rate);
  // P(= s) = (1 - p) p^s, s >= 0.
  std::uint64_t geometric(double p);

 private:
  std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t x);

}  // namespace perclab
