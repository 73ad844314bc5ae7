#pragma once

#include <cstdint>
#include <random>

#include "ucstar/numlin/matrix.hpp"

namespace ucstar {

/// Seeded generator with platform-independent derived distributions.
/// std::uniform_real_distribution and friends are implementation-defined, so
/// the conversions below are done by hand on top of mt19937_64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi].
  std::size_t index(std::size_t lo, std::size_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::size_t>(engine_() % span);
  }

  bool coin(double p = 0.5) { return uniform() < p; }

  /// Complex number with both parts uniform in [-1, 1).
  Complex complex() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

  Matrix matrix(std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (auto& z : m.entries()) z = complex();
    return m;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ucstar
