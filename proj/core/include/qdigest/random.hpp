#pragma once

#include <cstdint>
#include <random>

namespace qdigest {

/// Seeded generator with platform-stable draws. The standard distributions
/// are implementation-defined, so uniform draws are derived here directly
/// from mt19937_64 output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi], by rejection.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer, for deriving independent child seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace qdigest
