#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ergodesk/phase.hpp"
#include "ergodesk/systems.hpp"

namespace ergodesk {

/// Torus character g_{k,m}(u, v) = exp(2 pi i (k u + m v)).
struct FourierMode {
  std::int64_t k = 0;
  std::int64_t m = 0;
  friend auto operator<=>(const FourierMode&, const FourierMode&) = default;
};

struct PhasedMode {
  Phase phase;
  FourierMode mode;
  friend bool operator==(const PhasedMode&, const PhasedMode&) = default;
};

/// Non-constant cylinder function d_{k,m}(w) = prod_i phi_{c_i}(w_{k+i}).
///
/// The shape code m lists the colors c_0, c_1, ... as base-n digits (n the
/// alphabet size, phi_0 = 1, phi_1..phi_{n-1} orthonormal and centred), so
/// valid codes are m >= 1 with m % n != 0. Shifting the sequence moves k by one.
struct LebesgueTail {
  std::int64_t k = 0;
  std::int64_t m = 1;
  friend auto operator<=>(const LebesgueTail&, const LebesgueTail&) = default;
};

/// Basis function of rotation x shift: exp(2 pi i l u) times either the constant
/// (tail empty, the proper function \bar h_l) or d_{k,m} (p_{l,k,m}). With
/// normalized set, the index denotes t_{l,k,m} = exp(2 pi i l k gamma) p_{l,k,m}.
struct ProductBasisIndex {
  std::int64_t l = 0;
  std::optional<LebesgueTail> tail;
  bool normalized = false;
  friend auto operator<=>(const ProductBasisIndex&, const ProductBasisIndex&) = default;
};

using BasisKey = std::variant<FourierMode, ProductBasisIndex>;

std::string to_string(const BasisKey& key);

/// U g_{k,m} = exp(2 pi i k gamma) g_{k+m,m}.
PhasedMode koopman_apply_skew(FourierMode mode);
PhasedMode koopman_inverse_skew(FourierMode mode);

/// a_{k,m} with a_{k+m,m} = exp(2 pi i k gamma) a_{k,m}, anchored at phase 1 on
/// the chain representative r = k mod |m|, 0 <= r < |m|. Throws
/// std::invalid_argument for m = 0.
Phase normalizing_phase(std::int64_t k, std::int64_t m);

/// V on rotation x shift: constants pick up exp(2 pi i l gamma) in place; p
/// indices pick up the same phase and move k -> k+1; t indices move with phase 1.
std::pair<Phase, ProductBasisIndex> koopman_apply_product(const ProductBasisIndex& idx);
std::pair<Phase, ProductBasisIndex> koopman_inverse_product(const ProductBasisIndex& idx);

/// Koopman action of any of the four systems on its own basis keys. Throws
/// std::invalid_argument for keys outside the system's basis.
std::pair<Phase, BasisKey> koopman_apply(const SystemSpec& spec, const BasisKey& key);
std::pair<Phase, BasisKey> koopman_inverse(const SystemSpec& spec, const BasisKey& key);

/// Valid shape codes m <= bound for an alphabet of the given size.
std::vector<std::int64_t> shape_codes(std::size_t alphabet, std::int64_t bound);

/// All basis keys in the truncation |indices| <= bound (shape codes <= bound).
std::vector<BasisKey> truncated_basis(const SystemSpec& spec, std::int64_t bound);

struct Orbit {
  enum class Kind { fixed, chain };
  Kind kind = Kind::fixed;
  /// Chain members in Koopman order: member i+1 is the image of member i.
  std::vector<BasisKey> members;
  /// Proper value of a fixed singleton.
  Phase proper_value;
  /// Chain cut by the truncation boundary.
  bool partial = false;
  std::string label;
};

std::vector<Orbit> orbit_decompose(const SystemSpec& spec, std::int64_t bound);

// ---------------------------------------------------------------------------
// Spectrum descriptors

enum class SpectrumTag { pure_point, pure_continuous, mixed };
std::string to_string(SpectrumTag tag);

/// Lebesgue multiplicity: a finite count or countably infinite.
struct Multiplicity {
  bool infinite = false;
  std::uint64_t count = 0;

  static Multiplicity none() { return {}; }
  static Multiplicity countable() { return {true, 0}; }
  bool is_zero() const { return !infinite && count == 0; }
  friend bool operator==(const Multiplicity&, const Multiplicity&) = default;
};

/// Point spectrum generator: proper values exp(2 pi i k gamma), k in Z.
struct PointGenerator {
  RotationNumber gamma;
  bool simple = true;
};

struct SpectrumDescriptor {
  std::vector<PointGenerator> generators;
  std::uint64_t unit_multiplicity = 1;
  Multiplicity lebesgue;
  SpectrumTag tag = SpectrumTag::pure_point;

  /// Fills the tag from the parts.
  static SpectrumDescriptor make(std::vector<PointGenerator> generators, std::uint64_t unit_multiplicity,
                                 Multiplicity lebesgue);
  SpectrumTag derived_tag() const;
  bool consistent() const { return tag == derived_tag(); }

  /// Proper values k * gamma for |k| <= bound, as gamma multiples of each generator.
  std::vector<std::pair<std::size_t, std::int64_t>> proper_value_multiples(std::int64_t bound) const;
};

SpectrumDescriptor spectrum_of(const SystemSpec& spec);

/// Descriptor of the product of two systems' point parts: generator lists are
/// merged, and coinciding generators lose simplicity.
SpectrumDescriptor merge_point_spectra(const SpectrumDescriptor& a, const SpectrumDescriptor& b);

/// gamma2 = sign * gamma1 + shift.
struct GammaRelation {
  int sign = 1;
  std::int64_t shift = 0;
  friend bool operator==(const GammaRelation&, const GammaRelation&) = default;
};

struct GroupComparison {
  bool equal = false;
  /// a with gamma2 = a * gamma1 (mod 1), |a| <= bound.
  std::optional<std::int64_t> forward;
  /// b with gamma1 = b * gamma2 (mod 1), |b| <= bound.
  std::optional<std::int64_t> backward;
  std::optional<GammaRelation> relation;
  std::int64_t bound = 0;
};

/// Compares the groups {k gamma mod 1} in exact arithmetic. Throws
/// std::domain_error for a decimal (non-exact) angle.
GroupComparison point_spectrum_groups_equal(const RotationNumber& g1, const RotationNumber& g2, std::int64_t bound);

/// Same proper-value groups, unit multiplicity and Lebesgue multiplicity.
bool same_spectrum(const SpectrumDescriptor& a, const SpectrumDescriptor& b, std::int64_t bound = 64);

// ---------------------------------------------------------------------------
// Spectral labels and the intertwiner

/// h_k: proper function with proper value k * gamma (k = 0 is the constant).
struct PointLabel {
  std::int64_t k = 0;
  friend auto operator<=>(const PointLabel&, const PointLabel&) = default;
};

/// h_{i,j}: position i on Lebesgue chain j; the Koopman operator maps h_{i,j}
/// to h_{i+1,j} with phase exactly 1.
struct ChainLabel {
  std::int64_t i = 0;
  std::int64_t j = 0;
  friend auto operator<=>(const ChainLabel&, const ChainLabel&) = default;
};

using SpectralLabel = std::variant<PointLabel, ChainLabel>;
std::string to_string(const SpectralLabel& label);

/// h_label = coeff * (basis function of key).
struct LabeledElement {
  Phase coeff;
  BasisKey key;
};

/// Relabels a system's Fourier/cylinder basis as proper functions h_k plus
/// Lebesgue chains h_{i,j}.
///
/// Chain numbering: the skew map orders chains (m, r) by |m|, then m > 0
/// before m < 0, then residue r; rotation x shift pairs zigzag(l) with the
/// rank of the shape code through the Cantor pairing; the Bernoulli shift
/// uses the shape rank alone.
class SpectralBasis {
 public:
  explicit SpectralBasis(SystemSpec spec);

  const SystemSpec& spec() const { return spec_; }
  bool has_chains() const { return spec_.kind() != SystemKind::rotation; }
  bool has_point(std::int64_t k) const;

  LabeledElement element(const SpectralLabel& label) const;
  /// (label, c) with basis function of key = c * h_label.
  std::pair<SpectralLabel, Phase> locate(const BasisKey& key) const;
  Phase point_value(std::int64_t k) const;

  /// Labels with |k| <= bound, |i| <= bound, 0 <= j <= 2*bound.
  std::vector<SpectralLabel> truncated_labels(std::int64_t bound) const;

  std::string labeling_description() const;

 private:
  SystemSpec spec_;
};

struct IntertwinerPairing {
  SystemSpec a;
  SystemSpec b;
  std::int64_t truncation = 0;
  /// Angle of b in terms of a's angle; phases of b convert by this sign.
  GammaRelation relation;
  std::vector<std::pair<SpectralLabel, SpectralLabel>> pairs;
};

/// Pairs h_k with the proper function of equal proper value and chains
/// position-by-position. Throws std::invalid_argument when the descriptors
/// are incompatible.
IntertwinerPairing build_intertwiner(const SystemSpec& a, const SystemSpec& b, std::int64_t truncation);

struct IntertwinerCheck {
  std::uint64_t checked = 0;
  std::uint64_t mismatches = 0;
  double max_residual = 0;
};

/// Checks W U h = V W h on every interior label (chain positions i < truncation).
IntertwinerCheck verify_intertwiner(const IntertwinerPairing& pairing, std::int64_t truncation);
inline IntertwinerCheck verify_intertwiner(const IntertwinerPairing& pairing) {
  return verify_intertwiner(pairing, pairing.truncation);
}

struct ProperModes {
  std::vector<std::pair<FourierMode, Phase>> modes;
  /// Every m != 0 row splits into shift chains without fixed points.
  bool certified = false;
  std::size_t chains_checked = 0;
};

ProperModes proper_modes_of_skew(std::int64_t bound);

}  // namespace ergodesk
