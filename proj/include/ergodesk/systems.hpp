#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ergodesk/rng.hpp"
#include "ergodesk/rotation_number.hpp"

namespace ergodesk {

/// Symbol probabilities of a Bernoulli shift. Symbols are plain labels; the
/// two-symbol default alphabet is {-1, 1}.
struct BernoulliSpec {
  std::vector<double> probs;
  std::vector<int> symbols;

  /// Default labels: {-1, 1} for two symbols, 0..n-1 otherwise.
  static BernoulliSpec make(std::vector<double> probs, std::vector<int> symbols = {});
  static BernoulliSpec fair_coin() { return make({0.5, 0.5}); }

  /// Throws std::invalid_argument unless each prob is in (0, 1), the sum is 1
  /// within 1e-15 and the labels are distinct.
  void validate() const;

  std::size_t size() const { return probs.size(); }
  /// Alphabet position of a label; throws std::invalid_argument if absent.
  std::size_t index_of(int symbol) const;
  double prob_of(int symbol) const { return probs[index_of(symbol)]; }
  std::vector<double> cumulative() const;
};

struct CylinderConstraint {
  std::int64_t position;
  int symbol;
  friend bool operator==(const CylinderConstraint&, const CylinderConstraint&) = default;
};

/// Finite set of coordinate constraints {w : w[i_j] = e_j}.
struct CylinderSet {
  std::vector<CylinderConstraint> constraints;

  /// Positions strictly increasing, symbols in the alphabet.
  void validate(const BernoulliSpec& spec) const;
  CylinderSet translated(std::int64_t offset) const;
  friend bool operator==(const CylinderSet&, const CylinderSet&) = default;
};

/// Finite window of a bi-infinite symbol sequence: symbols[j] sits at
/// coordinate anchor + j.
struct SymbolWindow {
  std::int64_t anchor = 0;
  std::vector<int> symbols;

  std::int64_t first() const { return anchor; }
  std::int64_t last() const { return anchor + static_cast<std::int64_t>(symbols.size()) - 1; }
  bool covers(std::int64_t i) const { return i >= first() && i <= last(); }
  /// Throws std::out_of_range outside the window.
  int at(std::int64_t i) const;
  friend bool operator==(const SymbolWindow&, const SymbolWindow&) = default;
};

struct CirclePoint {
  double u = 0;
  friend bool operator==(const CirclePoint&, const CirclePoint&) = default;
};

struct TorusPoint {
  double u = 0;
  double v = 0;
  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

struct ProductPoint {
  double u = 0;
  SymbolWindow w;
  friend bool operator==(const ProductPoint&, const ProductPoint&) = default;
};

using SystemPoint = std::variant<CirclePoint, TorusPoint, SymbolWindow, ProductPoint>;

enum class SystemKind { rotation, skew, bernoulli, product };

std::string to_string(SystemKind kind);
SystemKind system_kind_from_string(const std::string& name);

/// One of the four concrete systems: circle rotation, the skew map on the
/// torus, a Bernoulli shift, and rotation x shift.
class SystemSpec {
 public:
  static SystemSpec rotation(RotationNumber gamma);
  static SystemSpec skew(RotationNumber gamma);
  static SystemSpec bernoulli(BernoulliSpec spec);
  static SystemSpec product(RotationNumber gamma, BernoulliSpec spec);

  SystemKind kind() const { return kind_; }
  bool has_gamma() const { return gamma_.has_value(); }
  bool has_shift() const { return shift_.has_value(); }
  /// Throws std::logic_error when the kind has no angle.
  const RotationNumber& gamma() const;
  /// Throws std::logic_error when the kind has no shift.
  const BernoulliSpec& shift() const;

  std::string name() const;
  friend bool operator==(const SystemSpec& x, const SystemSpec& y);

 private:
  SystemSpec() = default;
  SystemKind kind_ = SystemKind::rotation;
  std::optional<RotationNumber> gamma_;
  std::optional<BernoulliSpec> shift_;
};

// Maps. Circle coordinates are reduced into [0, 1) with one correction.

double rotation_step(double u, const RotationNumber& gamma);
double rotation_inverse(double u, const RotationNumber& gamma);
/// u + k*gamma mod 1 with k*gamma reduced exactly first.
double rotation_power(double u, const RotationNumber& gamma, std::int64_t k);

TorusPoint skew_step(TorusPoint p, const RotationNumber& gamma);
TorusPoint skew_inverse(TorusPoint p, const RotationNumber& gamma);

SymbolWindow shift_step(SymbolWindow w);
SymbolWindow shift_inverse(SymbolWindow w);
SymbolWindow shift_power(SymbolWindow w, std::int64_t n);

ProductPoint product_step(ProductPoint p, const RotationNumber& gamma);
ProductPoint product_inverse(ProductPoint p, const RotationNumber& gamma);

/// Applies the system's map; throws std::invalid_argument on a point of the wrong shape.
SystemPoint step(const SystemSpec& spec, const SystemPoint& x);
SystemPoint inverse_step(const SystemSpec& spec, const SystemPoint& x);
/// step() in place; symbol windows move by re-anchoring, without copying.
void advance(const SystemSpec& spec, SystemPoint& x);

/// Draws a point from the invariant measure. Sequence systems get the window
/// [-half_width, half_width].
SystemPoint sample_point(const SystemSpec& spec, Rng& rng, std::int64_t half_width);

/// Product of the constrained symbols' probabilities.
double cylinder_measure(const BernoulliSpec& spec, const CylinderSet& c);

}  // namespace ergodesk
