#pragma once

#include <cstdint>
#include <random>

#include "commexp/matrix.hpp"

namespace commexp {

// Deterministic random source. Doubles are derived from raw engine words so
// streams are reproducible across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform in [-1, 1).
  double symmetric() { return 2.0 * unit() - 1.0; }

  // Uniform on the closed unit disk.
  Complex unit_disk() {
    while (true) {
      double x = symmetric(), y = symmetric();
      if (x * x + y * y <= 1.0) return {x, y};
    }
  }

  // Uniform on the annulus lo <= |z| <= 1.
  Complex disk_annulus(double lo) {
    while (true) {
      Complex z = unit_disk();
      if (std::abs(z) >= lo) return z;
    }
  }

  // Uniform integer in [lo, hi], inclusive.
  int int_range(int lo, int hi) {
    return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // Matrix with independent unit-disk entries, scaled.
  CMatrix matrix(int n, double scale = 1.0) {
    CMatrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = scale * unit_disk();
    return m;
  }

  // Upper triangular matrix with unit-disk entries, scaled.
  CMatrix upper_triangular(int n, double scale = 1.0) {
    CMatrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) m(i, j) = scale * unit_disk();
    return m;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace commexp
