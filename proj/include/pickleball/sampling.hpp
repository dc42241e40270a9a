#pragma once

#include <cstdint>

#include "pickleball/rational.hpp"

namespace pickleball {

// Small deterministic generator (splitmix64) for the random rational points
// used by the cross-pipeline equality checks. Not a general-purpose RNG.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniformly chosen num/den with 2 <= den <= max_denominator and
  // 0 < num < den, so the value lies in the open unit interval.
  Rational next_open_unit(int max_denominator) {
    std::uint64_t den = 2 + next_u64() % static_cast<std::uint64_t>(max_denominator - 1);
    std::uint64_t num = 1 + next_u64() % (den - 1);
    return make_rational(static_cast<long>(num), static_cast<long>(den));
  }

 private:
  std::uint64_t state_;
};

}  // namespace pickleball
