#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "quermass/types.hpp"

namespace quermass {

/// Deterministic random source. Draws are produced from raw mt19937_64 bits
/// with fixed arithmetic (no std::*_distribution, whose output is
/// implementation-defined), so a seed pins every sample byte-for-byte.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Standard normal via Box-Muller.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  Vec normal_vector(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = normal();
    return v;
  }

  Vec unit_vector(int n) {
    Vec v = normal_vector(n);
    while (v.norm() < 1e-8) v = normal_vector(n);
    return v / v.norm();
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace quermass
