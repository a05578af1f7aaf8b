#pragma once

#include <cstdint>
#include <random>

namespace orfd {

/// 64-bit Mersenne Twister (std::mt19937_64).  Doubles are built from the top
/// 53 bits of one draw, so sequences are identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// (x >> 11) * 2^-53, in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// 2 * unit() - 1, in [-1, 1).
  double symmetric() { return 2.0 * unit() - 1.0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace orfd
