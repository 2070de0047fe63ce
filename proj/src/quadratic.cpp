#include "ergodesk/quadratic.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ergodesk {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("quadratic arithmetic left 64-bit range");
  }
  return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 x, i128 y) {
  if (x < 0) x = -x;
  if (y < 0) y = -y;
  while (y != 0) {
    i128 t = x % y;
    x = y;
    y = t;
  }
  return x;
}

i128 floor_div(i128 num, i128 den) {
  i128 q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

QuadraticNumber make(i128 a, i128 b, std::int64_t d, i128 c) {
  if (c < 0) {
    a = -a;
    b = -b;
    c = -c;
  }
  i128 g = gcd128(gcd128(a, b), c);
  if (g > 1) {
    a /= g;
    b /= g;
    c /= g;
  }
  return QuadraticNumber(narrow(a), narrow(b), b == 0 ? 0 : d, narrow(c));
}

}  // namespace

namespace detail {

unsigned __int128 isqrt(unsigned __int128 n) {
  if (n == 0) return 0;
  auto x = static_cast<unsigned __int128>(std::sqrt(static_cast<long double>(n)));
  while (x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

std::int64_t extract_square(std::int64_t d, std::int64_t& squarefree) {
  std::int64_t s = 1;
  squarefree = d;
  for (std::int64_t f = 2; f * f <= squarefree; ++f) {
    while (squarefree % (f * f) == 0) {
      squarefree /= f * f;
      s *= f;
    }
  }
  return s;
}

}  // namespace detail

QuadraticNumber::QuadraticNumber(std::int64_t a, std::int64_t b, std::int64_t d, std::int64_t c) {
  if (c == 0) throw std::invalid_argument("quadratic number with zero denominator");
  if (b != 0 && d < 0) throw std::invalid_argument("negative radicand");
  i128 ba = a;
  i128 bb = b;
  std::int64_t dd = d;
  if (b != 0) {
    std::int64_t squarefree = 0;
    std::int64_t s = detail::extract_square(d, squarefree);
    bb *= s;
    dd = squarefree;
    if (dd == 1 || dd == 0) {
      // perfect square radicand: fold into the rational part
      ba += dd * bb;
      bb = 0;
      dd = 0;
    }
  } else {
    dd = 0;
  }
  i128 bc = c;
  if (bc < 0) {
    ba = -ba;
    bb = -bb;
    bc = -bc;
  }
  i128 g = gcd128(gcd128(ba, bb), bc);
  if (g > 1) {
    ba /= g;
    bb /= g;
    bc /= g;
  }
  a_ = narrow(ba);
  b_ = narrow(bb);
  d_ = bb == 0 ? 0 : dd;
  c_ = narrow(bc);
}

std::int64_t QuadraticNumber::floor() const {
  i128 whole = a_;
  if (b_ != 0) {
    auto sq = static_cast<unsigned __int128>(static_cast<i128>(b_) * b_) * static_cast<unsigned __int128>(d_);
    auto root = static_cast<i128>(detail::isqrt(sq));
    // b*sqrt(d) is irrational, so the floor of a negative multiple is one below -root
    whole += b_ > 0 ? root : -root - 1;
  }
  return narrow(floor_div(whole, c_));
}

QuadraticNumber QuadraticNumber::frac() const {
  return *this - integer(floor());
}

long double QuadraticNumber::to_long_double() const {
  long double v = static_cast<long double>(a_);
  if (b_ != 0) v += static_cast<long double>(b_) * std::sqrt(static_cast<long double>(d_));
  return v / static_cast<long double>(c_);
}

std::string QuadraticNumber::to_string() const {
  std::ostringstream os;
  os << "(" << a_;
  if (b_ != 0) os << (b_ < 0 ? " - " : " + ") << (b_ < 0 ? -b_ : b_) << "*sqrt(" << d_ << ")";
  os << ")/" << c_;
  return os.str();
}

QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (QuadraticNumber::radicands_differ(x, y)) {
    throw std::domain_error("sum of quadratic numbers from different fields");
  }
  std::int64_t d = x.b_ != 0 ? x.d_ : y.d_;
  i128 a = static_cast<i128>(x.a_) * y.c_ + static_cast<i128>(y.a_) * x.c_;
  i128 b = static_cast<i128>(x.b_) * y.c_ + static_cast<i128>(y.b_) * x.c_;
  i128 c = static_cast<i128>(x.c_) * y.c_;
  return make(a, b, d, c);
}

QuadraticNumber QuadraticNumber::operator-() const {
  QuadraticNumber r = *this;
  r.a_ = -a_;
  r.b_ = -b_;
  return r;
}

QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) { return x + (-y); }

QuadraticNumber operator*(std::int64_t k, const QuadraticNumber& x) {
  return make(static_cast<i128>(k) * x.a_, static_cast<i128>(k) * x.b_, x.d_, x.c_);
}

}  // namespace ergodesk
