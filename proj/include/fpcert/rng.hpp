#pragma once

#include <cstdint>
#include <random>

namespace fpcert {

// Seeded uniform source for reproducible sampling. The engine output is
// mapped to [0,1) here instead of going through uniform_real_distribution,
// whose output is not pinned down by the standard; the same seed must yield
// the same samples on every platform.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  // 53 uniform mantissa bits in [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t next_raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fpcert
