#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include "ergodesk/rotation_number.hpp"

namespace ergodesk {

/// Unimodular constant exp(2*pi*i*(num/den + gamma_multiple * gamma)).
///
/// Kept symbolic: the rational turn is reduced into [0, 1) and the gamma part
/// is an integer multiple of the owning system's rotation number. Products
/// are exact, so intertwining identities are checked with ==, not a tolerance.
class Phase {
 public:
  Phase() = default;

  static Phase one() { return {}; }
  static Phase turn(std::int64_t num, std::int64_t den);
  static Phase gamma(std::int64_t multiple);

  std::int64_t turn_num() const { return num_; }
  std::int64_t turn_den() const { return den_; }
  std::int64_t gamma_multiple() const { return gamma_; }
  bool is_one() const { return num_ == 0 && gamma_ == 0; }

  Phase inverse() const;
  friend Phase operator*(const Phase& x, const Phase& y);
  friend bool operator==(const Phase&, const Phase&) = default;

  /// Re-expresses a phase of a system whose angle is sign*gamma + n.
  Phase with_gamma_sign(int sign) const;

  /// Angle in turns, reduced into [0, 1).
  long double turns(const RotationNumber& gamma) const;
  std::complex<double> evaluate(const RotationNumber& gamma) const;

  std::string to_string() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::int64_t gamma_ = 0;
};

}  // namespace ergodesk
