#pragma once

// Small hand-rolled generators for property tests. Independent of the
// library's Rng so a bug there cannot hide behind the same stream.

#include <cstdint>
#include <random>
#include <vector>

namespace gen {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng_);
  }
  double real(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }

  /// Strictly positive probabilities summing to 1 (last entry absorbs rounding).
  std::vector<double> simplex(std::size_t n) {
    std::vector<double> w(n);
    double s = 0;
    for (auto& x : w) s += (x = 0.05 + real());
    double acc = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) acc += (w[i] /= s);
    w[n - 1] = 1.0 - acc;
    return w;
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace gen
