#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ergodesk/koopman.hpp"
#include "ergodesk/residual.hpp"
#include "ergodesk/systems.hpp"

namespace ergodesk {

/// Subgroup of Z^2 in Hermite normal form: generated by (p, q) and (0, r) with
/// p >= 0, r >= 0, 0 <= q < r when r > 0, and q = 0 when p = 0.
class CharacterLattice {
 public:
  CharacterLattice() = default;
  static CharacterLattice zero() { return {}; }
  static CharacterLattice full() { return generated_by({{1, 0}, {0, 1}}); }
  static CharacterLattice generated_by(const std::vector<FourierMode>& generators);

  CharacterLattice with(FourierMode g) const;
  bool contains(FourierMode mode) const;
  bool subset_of(const CharacterLattice& other) const;
  /// d >= 0 with {k : (k, 0) in the lattice} = dZ.
  std::int64_t row_generator() const;
  /// Hermite basis, zero vectors dropped.
  std::vector<FourierMode> generators() const;
  std::string describe() const;

  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }
  std::int64_t r() const { return r_; }

  friend bool operator==(const CharacterLattice&, const CharacterLattice&) = default;

 private:
  std::int64_t p_ = 0;
  std::int64_t q_ = 0;
  std::int64_t r_ = 0;
};

/// Tower level: constants times the characters of a lattice. Depth 1 is 1'
/// (constants only), depth 2 is 1'', and so on.
struct TowerLevel {
  CharacterLattice characters;
  bool with_constants = true;
  int depth = 1;

  bool contains(FourierMode mode) const { return characters.contains(mode); }
  friend bool operator==(const TowerLevel& a, const TowerLevel& b) {
    return a.characters == b.characters && a.with_constants == b.with_constants;
  }
};

TowerLevel constants_level();

/// Characters whose dynamical quotient lies in the level. The skew map sends
/// (k, m) to (phase k gamma, (m, 0)); a rotation sends (k, 0) to (phase k gamma, 0).
/// Throws std::invalid_argument for systems without character-lattice structure.
TowerLevel tower_step(const TowerLevel& level, const SystemSpec& spec);

/// Levels 1', 1'', ... up to depth max_depth. Throws std::invalid_argument for
/// max_depth < 1 or as tower_step.
std::vector<TowerLevel> compute_tower(const SystemSpec& spec, int max_depth);

/// Least depth n with level n = level n+1.
int stabilization_depth(const SystemSpec& spec, int max_depth = 16);

struct Quotient {
  Phase constant;
  FourierMode character;
  friend bool operator==(const Quotient&, const Quotient&) = default;
};

/// Quotient (g o S) / g of a character in the given level (depth >= 2). The
/// result lies in the previous level. Throws std::invalid_argument when the
/// character is outside the level.
Quotient quotient_homomorphism(const SystemSpec& spec, const TowerLevel& level, FourierMode character);

/// Quotient of a product compared against the product of quotients.
bool quotient_is_multiplicative(const SystemSpec& spec, const TowerLevel& level, FourierMode a, FourierMode b);

/// Tower step for an arbitrary torus map, decided numerically on a grid: a
/// character is kept when its quotient correlates to modulus 1 with a
/// character of the level. Characters are searched in |k|, |m| <= window.
using TorusMap = std::function<TorusPoint(TorusPoint)>;
CharacterLattice sampled_tower_step(const TorusMap& map, const CharacterLattice& level, int window);

enum class TowerProvenance { exact, residual_certified };
std::string to_string(TowerProvenance p);

struct TowerEvidence {
  std::string system;
  TowerProvenance provenance = TowerProvenance::exact;
  /// 1'' = 1'''.
  bool stable = false;
  std::vector<TowerLevel> levels;
  std::vector<ResidualReport> residuals;
  std::vector<ResidualThresholds> thresholds;
};

struct TowerVerdict {
  bool distinguished = false;
  TowerEvidence a;
  TowerEvidence b;
};

struct InconclusiveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TowerOptions {
  std::vector<std::int64_t> ks = {0, 1, -1, 2, -2};
  std::vector<int> windows = {8};
  int cutoff = 2;
};

/// Exact tower for rotation and skew systems, residual-certified for rotation x
/// shift. Throws InconclusiveError when a residual falls between thresholds.
TowerEvidence tower_evidence(const SystemSpec& spec, const TowerOptions& options = {});
TowerVerdict towers_distinguish(const SystemSpec& a, const SystemSpec& b, const TowerOptions& options = {});

}  // namespace ergodesk
