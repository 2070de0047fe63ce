#include "ergodesk/phase.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ergodesk {

namespace {

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("phase gamma multiple overflow");
  return r;
}

}  // namespace

Phase Phase::turn(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("phase with zero turn denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  num %= den;
  if (num < 0) num += den;
  std::int64_t g = std::gcd(num, den);
  Phase p;
  p.num_ = num / g;
  p.den_ = den / g;
  if (p.num_ == 0) p.den_ = 1;
  return p;
}

Phase Phase::gamma(std::int64_t multiple) {
  Phase p;
  p.gamma_ = multiple;
  return p;
}

Phase Phase::inverse() const {
  Phase p = turn(-num_, den_);
  p.gamma_ = -gamma_;
  return p;
}

Phase operator*(const Phase& x, const Phase& y) {
  std::int64_t l = std::lcm(x.den_, y.den_);
  Phase p = Phase::turn(x.num_ * (l / x.den_) + y.num_ * (l / y.den_), l);
  p.gamma_ = checked_add(x.gamma_, y.gamma_);
  return p;
}

Phase Phase::with_gamma_sign(int sign) const {
  Phase p = *this;
  p.gamma_ = sign < 0 ? -gamma_ : gamma_;
  return p;
}

long double Phase::turns(const RotationNumber& g) const {
  long double t = static_cast<long double>(num_) / static_cast<long double>(den_) + g.multiple_mod1(gamma_);
  if (t >= 1.0L) t -= 1.0L;
  return t;
}

std::complex<double> Phase::evaluate(const RotationNumber& g) const {
  long double angle = 2.0L * std::numbers::pi_v<long double> * turns(g);
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

std::string Phase::to_string() const {
  std::ostringstream os;
  os << "exp(2pi i(" << num_ << "/" << den_ << " + " << gamma_ << "g))";
  return os.str();
}

}  // namespace ergodesk
