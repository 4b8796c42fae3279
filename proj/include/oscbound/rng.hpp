#pragma once

// Deterministic random-draw helpers. mt19937_64 output is pinned by the
// standard, and every mapping below is written out explicitly (no
// distribution objects), so a fixed seed reproduces the same draws on any
// platform and toolchain.

#include <cstdint>
#include <random>

#include "oscbound/rat.hpp"
#include "oscbound/unipoly.hpp"

namespace oscbound {

class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next_u64() { return eng_(); }

  // inclusive bounds; modulo bias is irrelevant at the ranges used here and
  // keeps the mapping trivially reproducible
  long uniform_int(long lo, long hi) {
    uint64_t span = uint64_t(hi - lo) + 1;
    return lo + long(next_u64() % span);
  }

  double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  cplx uniform_disk(double radius) {
    // rejection from the bounding square; draw order is fixed
    for (;;) {
      double x = uniform(-1.0, 1.0), y = uniform(-1.0, 1.0);
      if (x * x + y * y <= 1.0) return cplx(radius * x, radius * y);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace oscbound
