#include "ergodesk/systems.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace ergodesk {

namespace {

double wrap(double x) {
  if (x >= 1.0) return x - 1.0;
  if (x < 0.0) return x + 1.0;
  return x;
}

}  // namespace

BernoulliSpec BernoulliSpec::make(std::vector<double> probs, std::vector<int> symbols) {
  BernoulliSpec s;
  s.probs = std::move(probs);
  if (symbols.empty()) {
    if (s.probs.size() == 2) {
      symbols = {-1, 1};
    } else {
      for (std::size_t i = 0; i < s.probs.size(); ++i) symbols.push_back(static_cast<int>(i));
    }
  }
  s.symbols = std::move(symbols);
  s.validate();
  return s;
}

void BernoulliSpec::validate() const {
  if (probs.size() < 2) throw std::invalid_argument("bernoulli spec needs at least two symbols");
  if (symbols.size() != probs.size()) throw std::invalid_argument("bernoulli spec: one label per probability");
  long double sum = 0;
  for (double p : probs) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("bernoulli spec: probabilities must lie in (0, 1)");
    sum += p;
  }
  if (std::fabs(static_cast<double>(sum - 1.0L)) > 1e-15) {
    throw std::invalid_argument("bernoulli spec: probabilities must sum to 1");
  }
  std::set<int> distinct(symbols.begin(), symbols.end());
  if (distinct.size() != symbols.size()) throw std::invalid_argument("bernoulli spec: duplicate labels");
}

std::size_t BernoulliSpec::index_of(int symbol) const {
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] == symbol) return i;
  }
  throw std::invalid_argument("symbol " + std::to_string(symbol) + " not in alphabet");
}

std::vector<double> BernoulliSpec::cumulative() const {
  std::vector<double> c(probs.size());
  double acc = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    c[i] = acc;
  }
  c.back() = 1.0;
  return c;
}

void CylinderSet::validate(const BernoulliSpec& spec) const {
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (i > 0 && constraints[i].position <= constraints[i - 1].position) {
      throw std::invalid_argument("cylinder positions must be strictly increasing");
    }
    spec.index_of(constraints[i].symbol);
  }
}

CylinderSet CylinderSet::translated(std::int64_t offset) const {
  CylinderSet c = *this;
  for (auto& k : c.constraints) k.position += offset;
  return c;
}

int SymbolWindow::at(std::int64_t i) const {
  if (!covers(i)) {
    throw std::out_of_range("coordinate " + std::to_string(i) + " outside window [" + std::to_string(first()) + ", " +
                            std::to_string(last()) + "]");
  }
  return symbols[static_cast<std::size_t>(i - anchor)];
}

std::string to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::rotation:
      return "rotation";
    case SystemKind::skew:
      return "skew";
    case SystemKind::bernoulli:
      return "bernoulli";
    case SystemKind::product:
      return "product";
  }
  return "unknown";
}

SystemKind system_kind_from_string(const std::string& name) {
  if (name == "rotation") return SystemKind::rotation;
  if (name == "skew") return SystemKind::skew;
  if (name == "bernoulli") return SystemKind::bernoulli;
  if (name == "product") return SystemKind::product;
  throw std::invalid_argument("unknown system kind '" + name + "'");
}

SystemSpec SystemSpec::rotation(RotationNumber gamma) {
  SystemSpec s;
  s.kind_ = SystemKind::rotation;
  s.gamma_ = std::move(gamma);
  return s;
}

SystemSpec SystemSpec::skew(RotationNumber gamma) {
  SystemSpec s;
  s.kind_ = SystemKind::skew;
  s.gamma_ = std::move(gamma);
  return s;
}

SystemSpec SystemSpec::bernoulli(BernoulliSpec spec) {
  spec.validate();
  SystemSpec s;
  s.kind_ = SystemKind::bernoulli;
  s.shift_ = std::move(spec);
  return s;
}

SystemSpec SystemSpec::product(RotationNumber gamma, BernoulliSpec spec) {
  spec.validate();
  SystemSpec s;
  s.kind_ = SystemKind::product;
  s.gamma_ = std::move(gamma);
  s.shift_ = std::move(spec);
  return s;
}

const RotationNumber& SystemSpec::gamma() const {
  if (!gamma_) throw std::logic_error(to_string(kind_) + " system has no rotation number");
  return *gamma_;
}

const BernoulliSpec& SystemSpec::shift() const {
  if (!shift_) throw std::logic_error(to_string(kind_) + " system has no shift");
  return *shift_;
}

std::string SystemSpec::name() const {
  std::string s = to_string(kind_);
  if (gamma_) s += "(" + gamma_->describe();
  if (shift_) {
    s += gamma_ ? ", [" : "([";
    for (std::size_t i = 0; i < shift_->probs.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(shift_->probs[i]);
    }
    s += "]";
  }
  return s + ")";
}

bool operator==(const SystemSpec& x, const SystemSpec& y) {
  if (x.kind_ != y.kind_ || x.gamma_ != y.gamma_) return false;
  if (x.shift_.has_value() != y.shift_.has_value()) return false;
  if (!x.shift_) return true;
  return x.shift_->probs == y.shift_->probs && x.shift_->symbols == y.shift_->symbols;
}

double rotation_step(double u, const RotationNumber& gamma) { return wrap(u + gamma.value()); }

double rotation_inverse(double u, const RotationNumber& gamma) { return wrap(u - gamma.value()); }

double rotation_power(double u, const RotationNumber& gamma, std::int64_t k) {
  return wrap(u + static_cast<double>(gamma.multiple_mod1(k)));
}

TorusPoint skew_step(TorusPoint p, const RotationNumber& gamma) {
  return {rotation_step(p.u, gamma), wrap(p.v + p.u)};
}

TorusPoint skew_inverse(TorusPoint p, const RotationNumber& gamma) {
  double u = rotation_inverse(p.u, gamma);
  return {u, wrap(p.v - u)};
}

SymbolWindow shift_step(SymbolWindow w) {
  w.anchor -= 1;
  return w;
}

SymbolWindow shift_inverse(SymbolWindow w) {
  w.anchor += 1;
  return w;
}

SymbolWindow shift_power(SymbolWindow w, std::int64_t n) {
  w.anchor -= n;
  return w;
}

ProductPoint product_step(ProductPoint p, const RotationNumber& gamma) {
  return {rotation_step(p.u, gamma), shift_step(std::move(p.w))};
}

ProductPoint product_inverse(ProductPoint p, const RotationNumber& gamma) {
  return {rotation_inverse(p.u, gamma), shift_inverse(std::move(p.w))};
}

SystemPoint step(const SystemSpec& spec, const SystemPoint& x) {
  switch (spec.kind()) {
    case SystemKind::rotation:
      if (auto* p = std::get_if<CirclePoint>(&x)) return CirclePoint{rotation_step(p->u, spec.gamma())};
      break;
    case SystemKind::skew:
      if (auto* p = std::get_if<TorusPoint>(&x)) return skew_step(*p, spec.gamma());
      break;
    case SystemKind::bernoulli:
      if (auto* p = std::get_if<SymbolWindow>(&x)) return shift_step(*p);
      break;
    case SystemKind::product:
      if (auto* p = std::get_if<ProductPoint>(&x)) return product_step(*p, spec.gamma());
      break;
  }
  throw std::invalid_argument("point does not belong to " + spec.name());
}

SystemPoint inverse_step(const SystemSpec& spec, const SystemPoint& x) {
  switch (spec.kind()) {
    case SystemKind::rotation:
      if (auto* p = std::get_if<CirclePoint>(&x)) return CirclePoint{rotation_inverse(p->u, spec.gamma())};
      break;
    case SystemKind::skew:
      if (auto* p = std::get_if<TorusPoint>(&x)) return skew_inverse(*p, spec.gamma());
      break;
    case SystemKind::bernoulli:
      if (auto* p = std::get_if<SymbolWindow>(&x)) return shift_inverse(*p);
      break;
    case SystemKind::product:
      if (auto* p = std::get_if<ProductPoint>(&x)) return product_inverse(*p, spec.gamma());
      break;
  }
  throw std::invalid_argument("point does not belong to " + spec.name());
}

void advance(const SystemSpec& spec, SystemPoint& x) {
  if (spec.kind() == SystemKind::bernoulli) {
    if (auto* w = std::get_if<SymbolWindow>(&x)) {
      w->anchor -= 1;
      return;
    }
  } else if (spec.kind() == SystemKind::product) {
    if (auto* p = std::get_if<ProductPoint>(&x)) {
      p->u = rotation_step(p->u, spec.gamma());
      p->w.anchor -= 1;
      return;
    }
  }
  x = step(spec, x);
}

namespace {

SymbolWindow sample_window(const BernoulliSpec& spec, Rng& rng, std::int64_t half_width) {
  if (half_width < 0) throw std::invalid_argument("window half-width must be nonnegative");
  auto cum = spec.cumulative();
  SymbolWindow w;
  w.anchor = -half_width;
  w.symbols.resize(static_cast<std::size_t>(2 * half_width + 1));
  for (auto& s : w.symbols) s = spec.symbols[rng.categorical(cum)];
  return w;
}

}  // namespace

SystemPoint sample_point(const SystemSpec& spec, Rng& rng, std::int64_t half_width) {
  switch (spec.kind()) {
    case SystemKind::rotation:
      return CirclePoint{rng.uniform()};
    case SystemKind::skew: {
      double u = rng.uniform();
      return TorusPoint{u, rng.uniform()};
    }
    case SystemKind::bernoulli:
      return sample_window(spec.shift(), rng, half_width);
    case SystemKind::product: {
      double u = rng.uniform();
      return ProductPoint{u, sample_window(spec.shift(), rng, half_width)};
    }
  }
  throw std::invalid_argument("invalid system spec");
}

double cylinder_measure(const BernoulliSpec& spec, const CylinderSet& c) {
  c.validate(spec);
  double m = 1.0;
  for (const auto& k : c.constraints) m *= spec.prob_of(k.symbol);
  return m;
}

}  // namespace ergodesk
