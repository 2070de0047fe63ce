#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ergodesk/systems.hpp"

namespace ergodesk {

/// Partition cell: a u-interval [a, b) times a cylinder. The full interval and
/// the empty cylinder mean "no constraint" on that factor.
struct PartitionCell {
  std::string label;
  double a = 0.0;
  double b = 1.0;
  CylinderSet cylinder;

  bool full_interval() const { return a == 0.0 && b == 1.0; }
};

struct PartitionSpec {
  std::vector<PartitionCell> cells;

  /// One cell per symbol at coordinate 0.
  static PartitionSpec time_zero(const BernoulliSpec& spec);
  /// Intervals between consecutive cut points of [0, 1).
  static PartitionSpec intervals(const std::vector<double>& cuts);
  static PartitionSpec whole();

  /// Cells disjoint with measures summing to 1 within 1e-12, and each cell
  /// constraining only factors the system has. Throws std::invalid_argument.
  void validate(const SystemSpec& spec) const;
  /// Index of the cell holding x; throws std::invalid_argument if none does.
  std::size_t cell_of(const SystemPoint& x) const;
  std::string describe() const;
};

struct EntropyEstimate {
  double value = 0;  // nats
  int block_length = 0;
  std::uint64_t samples = 0;
  double standard_error = 0;
  bool exact = false;
};

struct UndersampledError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// -sum p log p in nats.
double bernoulli_entropy(const BernoulliSpec& spec);

/// (1/n) H of the exact n-block distribution of the time-zero coding,
/// by enumerating all blocks. Throws std::invalid_argument beyond 2^24 blocks.
EntropyEstimate analytic_block_entropy(const BernoulliSpec& spec, int n);

/// Plug-in (1/n) H over empirical sliding n-block frequencies. Requires
/// stream length >= 100 * c^n, c the number of distinct symbols (at least 2);
/// throws UndersampledError otherwise.
EntropyEstimate block_entropy_rate(const std::vector<int>& stream, int n);

/// Cell indices along one orbit of a point drawn from the invariant measure.
std::vector<int> coded_trajectory(const SystemSpec& spec, const PartitionSpec& alpha, std::size_t length, Rng& rng);

/// Monte-Carlo mean of -log mu(atom of the n-step itinerary) / n, with the atom
/// measure evaluated exactly. Throws UndersampledError below 100 samples per cell.
EntropyEstimate partition_refine_entropy(const SystemSpec& spec, const PartitionSpec& alpha, int n,
                                         std::uint64_t samples, Rng& rng);

struct EntropyVerdict {
  double entropy_a = 0;
  double entropy_b = 0;
  bool spacially_isomorphic = false;
  std::string spacial;
  std::string spectral;
};

/// Compares exact entropies. Throws std::invalid_argument unless tol > 0.
EntropyVerdict entropy_classifier(const BernoulliSpec& a, const BernoulliSpec& b, double tol);

}  // namespace ergodesk
