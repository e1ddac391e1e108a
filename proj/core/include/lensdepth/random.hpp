#pragma once

#include <cstdint>
#include <random>

namespace lensdepth {

/// Seeded generator with portable output.
///
/// The engine is std::mt19937_64, whose sequence is fixed by the standard.
/// Standard distributions are implementation-defined, so the transforms
/// below are written out to keep generated data identical across toolchains.
class Rng {
 public:
  static constexpr const char* kName = "mt19937_64+polar-normal";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound), bound > 0, unbiased (rejection sampling).
  std::uint64_t below(std::uint64_t bound);

  /// Standard normal via the Marsaglia polar method.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Derives an independent stream seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace lensdepth
