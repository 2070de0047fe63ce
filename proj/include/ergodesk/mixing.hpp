#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "ergodesk/koopman.hpp"
#include "ergodesk/systems.hpp"

namespace ergodesk {

/// {u in [a, b)}; on the torus the full v-circle.
struct UInterval {
  double a = 0;
  double b = 1;
};

/// [a, b) x [c, d) on the torus.
struct TorusRect {
  double a = 0;
  double b = 1;
  double c = 0;
  double d = 1;
};

struct CylinderTest {
  CylinderSet cylinder;
};

/// [a, b) x cylinder on rotation x shift.
struct ProductTest {
  UInterval interval;
  CylinderSet cylinder;
};

using TestSet = std::variant<UInterval, TorusRect, CylinderTest, ProductTest>;

std::string to_string(const TestSet& set);

/// Throws std::invalid_argument when the set does not fit the system or an
/// interval is outside 0 <= a < b <= 1.
void validate(const SystemSpec& spec, const TestSet& set);
double measure(const SystemSpec& spec, const TestSet& set);
bool contains(const SystemSpec& spec, const TestSet& set, const SystemPoint& x);

struct Observable {
  enum class Kind { indicator, coordinate, constant };
  Kind kind = Kind::constant;
  TestSet set;
  /// 0 for u, 1 for v; ignored on sequence coordinates.
  int axis = 0;
  /// Symbol coordinate for sequence systems.
  std::int64_t position = 0;
  double value = 1.0;

  static Observable indicator_of(TestSet s) { return {Kind::indicator, std::move(s)}; }
  static Observable u_coordinate() { return {Kind::coordinate, UInterval{}, 0}; }
  static Observable v_coordinate() { return {Kind::coordinate, UInterval{}, 1}; }
  static Observable symbol_at(std::int64_t pos) { return {Kind::coordinate, UInterval{}, 0, pos}; }
  static Observable constant(double v) { return {Kind::constant, UInterval{}, 0, 0, v}; }
};

double evaluate(const SystemSpec& spec, const Observable& f, const SystemPoint& x);

/// (1/n) sum_{j<n} f(S^j x0). Throws std::invalid_argument for n < 1.
double birkhoff_average(const SystemSpec& spec, const Observable& f, const SystemPoint& x0, std::uint64_t n);

struct CorrelationMode {
  bool exact = true;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  static CorrelationMode closed_form() { return {}; }
  static CorrelationMode monte_carlo(std::uint64_t samples, std::uint64_t seed) { return {false, samples, seed}; }
};

struct CorrelationPoint {
  std::int64_t i = 0;
  double value = 0;
  bool exact = false;
  double standard_error = 0;
};

/// True when mu(S^i A n B) has a closed form for this system and pair.
bool has_closed_form(const SystemSpec& spec, const TestSet& a, const TestSet& b);

/// mu(S^i A n B). Exact mode reduces i*gamma exactly and intersects intervals
/// or merges shifted cylinder constraints; Monte-Carlo mode averages
/// 1_A(x) 1_B(S^i x). Throws std::invalid_argument for exact mode without a
/// closed form.
CorrelationPoint correlation(const SystemSpec& spec, const TestSet& a, const TestSet& b, std::int64_t i,
                             const CorrelationMode& mode);

struct MixingStatistic {
  std::int64_t t = 0;
  double value = 0;
  bool exact = false;
  double standard_error = 0;
};

/// (1/t) sum_{i<t} |mu(S^i A n B) - mu(A) mu(B)|.
MixingStatistic weak_mixing_statistic(const SystemSpec& spec, const TestSet& a, const TestSet& b, std::int64_t t,
                                      const CorrelationMode& mode);

/// The only proper value is 1, and it is simple.
bool spectral_weak_mixing_check(const SpectrumDescriptor& d);
/// The proper value 1 is simple.
bool spectral_ergodicity_check(const SpectrumDescriptor& d);

}  // namespace ergodesk
