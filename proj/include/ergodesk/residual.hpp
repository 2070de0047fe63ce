#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ergodesk/systems.hpp"

namespace ergodesk {

/// Truncated search for g with g o T = delta * exp(2 pi i k u) * g.
///
/// The trial space is spanned by exp(2 pi i l u) * (second factor), |l| <= cutoff,
/// where the second factor is exp(2 pi i m v), |m| <= window, for the skew
/// map, or a cylinder function on coordinates [0, window) for rotation x shift.
/// Inner products use a uniform u-grid (and v-grid) of `grid` points and exact
/// enumeration of the symbol alphabet per coordinate. delta is eliminated in
/// closed form per candidate g.
struct ResidualOptions {
  int window = 8;
  int grid = 0;  // 0 selects 4 * window
  int cutoff = 2;
  int theta_samples = 64;
};

struct ResidualReport {
  std::int64_t k = 0;
  int window = 0;
  int grid = 0;
  int cutoff = 0;
  /// min over unit-norm g and unimodular delta of ||g o T - delta e^{2 pi i k u} g||.
  double residual = 0;
  /// arg(delta) / (2 pi) at the minimizer.
  double delta_turns = 0;
  /// Minimizer mass by cylinder weight (number of non-constant coordinates)
  /// for rotation x shift, by |m| for the skew map.
  std::vector<double> profile;
  std::size_t basis_size = 0;
  std::size_t components = 0;
  std::string minimizer;
};

/// Structured search: the residual form splits into independent blocks along
/// Koopman-linked index paths, each minimized on the grid.
/// Throws std::invalid_argument for a degenerate grid or an unsupported system.
ResidualReport quasi_eigen_residual_search(const SystemSpec& spec, std::int64_t k, const ResidualOptions& options);

/// Dense brute-force minimum over the full truncated space, evaluating the map
/// pointwise on the grid. Rotation x shift only; intended for window <= 5.
double dense_reference_residual(const SystemSpec& spec, std::int64_t k, int window, int grid, int cutoff);

/// Threshold protocol: existence accepted at residual <= accept_at, rejected at
/// residual >= reject_at = r0 / 2, inconclusive in between.
struct ResidualThresholds {
  double r0 = 0;
  double reject_at = 0;
  double accept_at = 1e-6;
};

enum class QuasiEigenVerdict { exists, absent, inconclusive };
std::string to_string(QuasiEigenVerdict v);

/// r0 from the dense reference at window 4, grid 16.
ResidualThresholds calibrate_thresholds(const SystemSpec& spec, std::int64_t k, int cutoff = 2);
QuasiEigenVerdict classify_residual(double residual, const ResidualThresholds& t);

}  // namespace ergodesk
