#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace ergodesk {

/// SplitMix64 step; used to derive independent sub-stream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Deterministic generator with a documented stream-splitting scheme.
///
/// A sub-stream seed is splitmix64 applied to root ^ (stream * 0x9E3779B97F4A7C15),
/// so work split into fixed chunks draws the same numbers no matter how the
/// chunks are scheduled. Uniform doubles take the top 53 bits of mt19937_64,
/// which keeps sample streams identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng substream(std::uint64_t root, std::uint64_t stream);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Index drawn from a cumulative distribution (last entry treated as 1).
  std::size_t categorical(std::span<const double> cumulative);

 private:
  std::mt19937_64 engine_;
};

}  // namespace ergodesk
