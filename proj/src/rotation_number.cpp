#include "ergodesk/rotation_number.hpp"

#include <mpfr.h>

#include <memory>
#include <stdexcept>

namespace ergodesk {

namespace {

class MpfrValue {
 public:
  explicit MpfrValue(int bits) { mpfr_init2(v_, bits); }
  ~MpfrValue() { mpfr_clear(v_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

void load_exact(MpfrValue& out, const QuadraticNumber& x, int bits) {
  MpfrValue root(bits);
  mpfr_set_si(root.get(), x.radicand(), MPFR_RNDN);
  mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
  mpfr_mul_si(root.get(), root.get(), x.b(), MPFR_RNDN);
  mpfr_add_si(out.get(), root.get(), x.a(), MPFR_RNDN);
  mpfr_div_si(out.get(), out.get(), x.c(), MPFR_RNDN);
}

std::string format(MpfrValue& v, int bits) {
  // enough decimal digits to round-trip the binary precision
  int digits = static_cast<int>(bits * 0.30103) + 2;
  std::unique_ptr<char, void (*)(char*)> buf(nullptr, [](char* p) { mpfr_free_str(p); });
  mpfr_exp_t exp10 = 0;
  buf.reset(mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), v.get(), MPFR_RNDN));
  std::string mant(buf.get());
  bool neg = !mant.empty() && mant[0] == '-';
  if (neg) mant.erase(0, 1);
  std::string out = neg ? "-" : "";
  if (exp10 <= 0) {
    out += "0." + std::string(static_cast<size_t>(-exp10), '0') + mant;
  } else if (static_cast<size_t>(exp10) >= mant.size()) {
    out += mant + std::string(static_cast<size_t>(exp10) - mant.size(), '0');
  } else {
    out += mant.substr(0, static_cast<size_t>(exp10)) + "." + mant.substr(static_cast<size_t>(exp10));
  }
  return out;
}

// Nearest long double to x; the long double sum a + b*sqrt(d) cancels badly.
long double nearest(const QuadraticNumber& x) {
  MpfrValue v(128);
  load_exact(v, x, 128);
  return mpfr_get_ld(v.get(), MPFR_RNDN);
}

}  // namespace

RotationNumber RotationNumber::quadratic(std::int64_t p, std::int64_t q, std::int64_t d, std::int64_t r) {
  if (q == 0) throw std::invalid_argument("rotation number: q must be nonzero");
  if (r == 0) throw std::invalid_argument("rotation number: r must be nonzero");
  if (d <= 1) throw std::invalid_argument("rotation number: d must exceed 1");
  auto root = static_cast<std::int64_t>(detail::isqrt(static_cast<unsigned __int128>(d)));
  if (root * root == d) throw std::invalid_argument("rotation number: d is a perfect square");
  RotationNumber g;
  g.kind_ = Kind::quadratic;
  g.exact_ = QuadraticNumber(p, q, d, r);
  if (g.exact_.floor() != 0) {
    throw std::invalid_argument("rotation number: value must lie in (0, 1), got " + g.exact_.to_string());
  }
  g.value_ = nearest(g.exact_);
  return g;
}

RotationNumber RotationNumber::decimal(const std::string& digits, int bits) {
  if (bits < 53) throw std::invalid_argument("rotation number: precision below 53 bits");
  MpfrValue v(bits);
  if (mpfr_set_str(v.get(), digits.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("rotation number: malformed decimal '" + digits + "'");
  }
  if (mpfr_sgn(v.get()) <= 0 || mpfr_cmp_ui(v.get(), 1) >= 0) {
    throw std::invalid_argument("rotation number: value must lie in (0, 1)");
  }
  RotationNumber g;
  g.kind_ = Kind::decimal;
  g.digits_ = digits;
  g.bits_ = bits;
  g.value_ = mpfr_get_ld(v.get(), MPFR_RNDN);
  return g;
}

RotationNumber RotationNumber::silver() { return quadratic(-1, 1, 2, 1); }

const QuadraticNumber& RotationNumber::exact() const {
  if (kind_ != Kind::quadratic) {
    throw std::domain_error("rotation number " + digits_ + " has no exact representation");
  }
  return exact_;
}

std::array<std::int64_t, 4> RotationNumber::quadratic_tuple() const {
  const auto& x = exact();
  return {x.a(), x.b(), x.radicand(), x.c()};
}

std::string RotationNumber::to_decimal_string(int bits) const {
  MpfrValue v(bits);
  if (kind_ == Kind::quadratic) {
    load_exact(v, exact_, bits);
  } else {
    mpfr_set_str(v.get(), digits_.c_str(), 10, MPFR_RNDN);
  }
  return format(v, bits);
}

long double RotationNumber::multiple_mod1(std::int64_t k) const {
  if (kind_ == Kind::quadratic) return nearest((k * exact_).frac());
  MpfrValue v(bits_);
  mpfr_set_str(v.get(), digits_.c_str(), 10, MPFR_RNDN);
  mpfr_mul_si(v.get(), v.get(), k, MPFR_RNDN);
  mpfr_frac(v.get(), v.get(), MPFR_RNDN);
  if (mpfr_sgn(v.get()) < 0) mpfr_add_ui(v.get(), v.get(), 1, MPFR_RNDN);
  return mpfr_get_ld(v.get(), MPFR_RNDN);
}

std::string RotationNumber::describe() const {
  if (kind_ == Kind::quadratic) return exact_.to_string();
  return digits_ + " @" + std::to_string(bits_) + "b";
}

bool operator==(const RotationNumber& x, const RotationNumber& y) {
  if (x.kind_ != y.kind_) return false;
  if (x.kind_ == RotationNumber::Kind::quadratic) return x.exact_ == y.exact_;
  return x.digits_ == y.digits_ && x.bits_ == y.bits_;
}

}  // namespace ergodesk
