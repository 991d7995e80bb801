#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>

#include <doctest.h>

namespace testing {

/// Property-test seed: ASYMPTOTICA_SEED, default 0.
inline std::uint64_t seed() {
  const char* s = std::getenv("ASYMPTOTICA_SEED");
  return s && *s ? std::strtoull(s, nullptr, 10) : 0;
}

/// Generator for one property, decorrelated from the others by a salt.
inline std::mt19937_64 rng(std::uint64_t salt) {
  std::seed_seq seq{seed(), salt};
  return std::mt19937_64(seq);
}

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

}  // namespace testing

#define SEED_INFO() INFO("ASYMPTOTICA_SEED = " << testing::seed())
