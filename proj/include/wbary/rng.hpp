#pragma once

#include <cstdint>
#include <random>

#include "wbary/rational.hpp"

namespace wbary {

// Deterministic RNG for generators and tests. mt19937_64 output is pinned by
// the standard; the bounded draw below avoids the implementation-defined
// std::uniform_int_distribution so identical seeds give identical streams
// everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t lim = n == 0 ? 0 : ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t r = next();
    while (r >= lim) r = next();
    return r % n;
  }

  // Uniform over multiples of 1/den in [-1, 1].
  Rational signed_unit_rational(std::uint64_t den) {
    const auto d = static_cast<long>(den);
    const long num = static_cast<long>(below(2 * den + 1)) - d;
    return Rational(num, d);
  }

  // Uniform over multiples of 1/den in [0, 1).
  Rational unit_rational(std::uint64_t den) {
    return Rational(static_cast<long>(below(den)), static_cast<long>(den));
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace wbary
