#include "perclab/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace perclab {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : state_(mix64(mix64(seed + 0x9e3779b97f4a7c15ULL) ^ (stream * 0xd1b54a32d192ed03ULL + 1))) {}

std::uint64_t CounterRng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix64(state_);
}

double CounterRng::uniform_open() {
  // 53 random bits mapped to (0, 1]
  return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
}

double CounterRng::exponential(double rate) {
  if (!(rate > 0)) throw std::invalid_argument("exponential: rate must be positive");
  return -std::log(uniform_open()) / rate;
}

std::uint64_t CounterRng::geometric(double p) {
  if (!(p >= 0 && p < 1)) throw std::invalid_argument("geometric: p must lie in [0, 1)");
  if (p == 0.0) {
    next();
    return 0;
  }
  return static_cast<std::uint64_t>(std::floor(exponential(1.0) / -std::log(p)));
}

}  // namespace perclab
