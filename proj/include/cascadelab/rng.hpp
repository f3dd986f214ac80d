#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace cascadelab {

/// splitmix64 output function (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of replication `r` under master seed `seed`. Depends only on the pair,
/// so replications can run in any order or on any thread.
constexpr std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t r) {
  return mix64(seed ^ (r * 0xd1b54a32d192ed03ULL));
}

/// mt19937_64 with hand-rolled conversions, because the standard
/// distributions are not specified bit-for-bit across library vendors.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform on [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Always consumes one draw, so streams stay aligned when probabilities
  /// change between otherwise identical runs.
  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform on {0, ..., n-1}; n must be positive.
  std::size_t below(std::size_t n) {
    auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return k < n ? k : n - 1;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace cascadelab
