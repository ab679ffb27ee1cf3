#pragma once

// Shared helpers for the test suites: instance shorthand and a tiny
// deterministic generator for randomized properties.

#include <cstdint>
#include <vector>

#include "rnv/model.hpp"
#include "rnv/rational.hpp"

namespace rnv::testing {

inline ProblemInstance inst(const Rational& mean, const Rational& cap, const Rational& backorder,
                            int horizon, const Rational& x0) {
  ProblemInstance out{mean, cap, backorder, horizon, x0};
  out.validate();
  return out;
}

// xorshift-style generator, independent of the library RNG on purpose.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : state_(seed ? seed : 0x9E3779B97F4A7C15ull) {}

  std::uint64_t next() {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return state_;
  }

  long below(long n) { return static_cast<long>(next() % static_cast<std::uint64_t>(n)); }

  // Rational in [0, hi] with a denominator of at most max_den.
  Rational rational_in(const Rational& hi, long max_den) {
    const long den = 1 + below(max_den);
    const long num = below(den + 1);
    return hi * frac(num, den);
  }

  ProblemInstance random_instance(int max_horizon) {
    const Rational cap = frac(1 + below(4), 1 + below(3));
    const Rational backorder = frac(1 + below(12), 1 + below(4));
    const Rational mean = rational_in(cap, 12);
    const Rational x0 = rational_in(cap, 12);
    ProblemInstance out{mean, cap, backorder, 1 + static_cast<int>(below(max_horizon)), x0};
    out.validate();
    return out;
  }

 private:
  std::uint64_t state_;
};

// Evenly spaced rationals 0, hi/n, ..., hi.
inline std::vector<Rational> even_grid(const Rational& hi, long n) {
  std::vector<Rational> out;
  out.reserve(n + 1);
  for (long i = 0; i <= n; ++i) out.push_back(hi * frac(i, n));
  return out;
}

}  // namespace rnv::testing
