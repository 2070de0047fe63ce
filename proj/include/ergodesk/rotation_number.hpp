#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "ergodesk/quadratic.hpp"

namespace ergodesk {

/// Irrational rotation angle in (0, 1).
///
/// Either an exact quadratic irrational (p + q*sqrt(d)) / r, or a decimal
/// string held at a fixed binary precision. Group-membership questions are
/// only answered for the exact kind; the decimal kind is accepted wherever a
/// floating value suffices.
class RotationNumber {
 public:
  enum class Kind { quadratic, decimal };

  static constexpr int kDefaultPrecisionBits = 128;

  /// Validates d > 1 non-square, q != 0 and value in (0, 1).
  static RotationNumber quadratic(std::int64_t p, std::int64_t q, std::int64_t d, std::int64_t r);
  static RotationNumber decimal(const std::string& digits, int bits = kDefaultPrecisionBits);
  /// sqrt(2) - 1, the default angle.
  static RotationNumber silver();

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ == Kind::quadratic; }

  /// Throws std::domain_error for the decimal kind.
  const QuadraticNumber& exact() const;
  /// Normalized (p, q, d, r) for the quadratic kind.
  std::array<std::int64_t, 4> quadratic_tuple() const;
  const std::string& digits() const { return digits_; }
  int precision_bits() const { return bits_; }

  double value() const { return static_cast<double>(value_); }
  long double value_ld() const { return value_; }
  /// Decimal expansion at the given binary precision; deterministic.
  std::string to_decimal_string(int bits = kDefaultPrecisionBits) const;

  /// frac(k * gamma), computed exactly for the quadratic kind.
  long double multiple_mod1(std::int64_t k) const;

  std::string describe() const;

  friend bool operator==(const RotationNumber& x, const RotationNumber& y);

 private:
  RotationNumber() = default;

  Kind kind_ = Kind::quadratic;
  QuadraticNumber exact_;
  std::string digits_;
  int bits_ = kDefaultPrecisionBits;
  long double value_ = 0;
};

}  // namespace ergodesk
