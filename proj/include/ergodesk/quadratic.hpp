#pragma once

#include <cstdint>
#include <string>

namespace ergodesk {

/// Exact element (a + b*sqrt(d)) / c of a real quadratic field.
///
/// Stored normalized: c > 0, gcd(a, b, c) = 1, d squarefree. A rational value
/// has b = 0 and d = 0, so equality is structural. All arithmetic is exact;
/// anything that would leave 64-bit range throws std::overflow_error.
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(std::int64_t a, std::int64_t b, std::int64_t d, std::int64_t c);

  static QuadraticNumber integer(std::int64_t n) { return {n, 0, 0, 1}; }

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t c() const { return c_; }
  std::int64_t radicand() const { return d_; }

  bool is_rational() const { return b_ == 0; }
  bool is_integer() const { return b_ == 0 && c_ == 1; }

  /// Exact floor, including the irrational part.
  std::int64_t floor() const;
  /// x - floor(x), in [0, 1).
  QuadraticNumber frac() const;

  long double to_long_double() const;
  std::string to_string() const;

  friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator*(std::int64_t k, const QuadraticNumber& x);
  QuadraticNumber operator-() const;
  friend bool operator==(const QuadraticNumber&, const QuadraticNumber&) = default;

  /// True when both values have an irrational part over different fields.
  static bool radicands_differ(const QuadraticNumber& x, const QuadraticNumber& y) {
    return x.b_ != 0 && y.b_ != 0 && x.d_ != y.d_;
  }

 private:
  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
  std::int64_t d_ = 0;
  std::int64_t c_ = 1;
};

namespace detail {
/// floor(sqrt(n)) for n >= 0.
unsigned __int128 isqrt(unsigned __int128 n);
/// Largest s with s*s | d; returns s and writes the squarefree part.
std::int64_t extract_square(std::int64_t d, std::int64_t& squarefree);
}  // namespace detail

}  // namespace ergodesk
