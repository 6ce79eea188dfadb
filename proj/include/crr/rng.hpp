#pragma once

#include <cstdint>
#include <random>

namespace crr {

// Deterministic pseudo-random source. All bounded draws are derived from raw
// engine words so that results are identical across platforms and standard
// library implementations (std::uniform_int_distribution is not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  bool next_bool() { return (next_u64() >> 32) & 1u; }

  // Uniform-ish draw in [0, n). Modulo bias is irrelevant at the scales used
  // here; determinism is what matters.
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  // Value in [0, 1).
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace crr
