#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "skein/rational.hpp"

namespace skein {

/// Deterministic seeded generator for property suites. mt19937_64 is fully
/// specified by the standard, so identical seeds replay identically on every
/// platform.
class Prng {
public:
  explicit Prng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
  bool coin() { return next() & 1; }

  /// Rational in [0,1] with denominator at most max_den.
  Rational unit_rational(long max_den) {
    long den = static_cast<long>(below(static_cast<std::uint64_t>(max_den))) + 1;
    long num = static_cast<long>(below(static_cast<std::uint64_t>(den) + 1));
    return Rational(num, den);
  }

  template <typename T>
  const T& pick(const std::vector<T>& pool) {
    return pool[static_cast<std::size_t>(below(pool.size()))];
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace skein
