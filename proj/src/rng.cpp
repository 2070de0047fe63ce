#include "ergodesk/rng.hpp"

namespace ergodesk {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Rng Rng::substream(std::uint64_t root, std::uint64_t stream) {
  std::uint64_t state = root ^ (stream * 0x9E3779B97F4A7C15ULL);
  return Rng(splitmix64(state));
}

std::size_t Rng::categorical(std::span<const double> cumulative) {
  double x = uniform();
  for (std::size_t i = 0; i + 1 < cumulative.size(); ++i) {
    if (x < cumulative[i]) return i;
  }
  return cumulative.size() - 1;
}

}  // namespace ergodesk
