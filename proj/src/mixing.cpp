#include "ergodesk/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ergodesk {

namespace {

// Every test set as [a, b) x [c, d) x cylinder; unused factors are full.
struct Box {
  double a = 0, b = 1, c = 0, d = 1;
  CylinderSet cylinder;
  bool full_v() const { return c == 0.0 && d == 1.0; }
};

Box box_of(const TestSet& s) {
  Box x;
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, UInterval>) {
          x.a = t.a;
          x.b = t.b;
        } else if constexpr (std::is_same_v<T, TorusRect>) {
          x.a = t.a;
          x.b = t.b;
          x.c = t.c;
          x.d = t.d;
        } else if constexpr (std::is_same_v<T, CylinderTest>) {
          x.cylinder = t.cylinder;
        } else {
          x.a = t.interval.a;
          x.b = t.interval.b;
          x.cylinder = t.cylinder;
        }
      },
      s);
  return x;
}

void check_interval(double a, double b) {
  if (!(a >= 0.0 && a < b && b <= 1.0)) {
    throw std::invalid_argument("interval [" + std::to_string(a) + ", " + std::to_string(b) + ") not inside [0, 1]");
  }
}

double wrap(long double x) {
  long double f = x - std::floor(x);
  return static_cast<double>(f >= 1.0L ? 0.0L : f);
}

// |([a1, b1) + shift mod 1) n [a2, b2)|
long double arc_overlap(double a1, double b1, long double shift, double a2, double b2) {
  long double lo = static_cast<long double>(a1) + shift;
  lo -= std::floor(lo);
  long double hi = lo + (b1 - a1);
  auto piece = [&](long double x, long double y) {
    return std::max(0.0L, std::min<long double>(y, b2) - std::max<long double>(x, a2));
  };
  if (hi <= 1.0L) return piece(lo, hi);
  return piece(lo, 1.0L) + piece(0.0L, hi - 1.0L);
}

// Constraints of A moved by -i merged with B's; nullopt on a conflict.
std::optional<std::map<std::int64_t, int>> merged_constraints(const CylinderSet& a, std::int64_t i, const CylinderSet& b) {
  std::map<std::int64_t, int> fixed;
  for (const auto& k : a.constraints) fixed.emplace(k.position - i, k.symbol);
  for (const auto& k : b.constraints) {
    auto [it, fresh] = fixed.emplace(k.position, k.symbol);
    if (!fresh && it->second != k.symbol) return std::nullopt;
  }
  return fixed;
}

int draw_symbol(const BernoulliSpec& spec, const std::vector<double>& cum, Rng& rng) {
  return spec.symbols[rng.categorical(cum)];
}

}  // namespace

std::string to_string(const TestSet& set) {
  std::ostringstream os;
  auto cyl = [&](const CylinderSet& c) {
    os << "{";
    for (std::size_t j = 0; j < c.constraints.size(); ++j) {
      if (j) os << ",";
      os << "w" << c.constraints[j].position << "=" << c.constraints[j].symbol;
    }
    os << "}";
  };
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, UInterval>) {
          os << "u[" << t.a << "," << t.b << ")";
        } else if constexpr (std::is_same_v<T, TorusRect>) {
          os << "u[" << t.a << "," << t.b << ")xv[" << t.c << "," << t.d << ")";
        } else if constexpr (std::is_same_v<T, CylinderTest>) {
          cyl(t.cylinder);
        } else {
          os << "u[" << t.interval.a << "," << t.interval.b << ")x";
          cyl(t.cylinder);
        }
      },
      set);
  return os.str();
}

void validate(const SystemSpec& spec, const TestSet& set) {
  Box x = box_of(set);
  check_interval(x.a, x.b);
  check_interval(x.c, x.d);
  bool ok = false;
  switch (spec.kind()) {
    case SystemKind::rotation:
      ok = std::holds_alternative<UInterval>(set);
      break;
    case SystemKind::skew:
      ok = std::holds_alternative<UInterval>(set) || std::holds_alternative<TorusRect>(set);
      break;
    case SystemKind::bernoulli:
      ok = std::holds_alternative<CylinderTest>(set);
      break;
    case SystemKind::product:
      ok = !std::holds_alternative<TorusRect>(set);
      break;
  }
  if (!ok) throw std::invalid_argument("test set " + to_string(set) + " does not fit " + spec.name());
  if (spec.has_shift()) x.cylinder.validate(spec.shift());
}

double measure(const SystemSpec& spec, const TestSet& set) {
  validate(spec, set);
  Box x = box_of(set);
  double m = (x.b - x.a) * (x.d - x.c);
  if (spec.has_shift()) m *= cylinder_measure(spec.shift(), x.cylinder);
  return m;
}

bool contains(const SystemSpec& spec, const TestSet& set, const SystemPoint& pt) {
  Box x = box_of(set);
  auto in_u = [&](double u) { return u >= x.a && u < x.b; };
  auto in_w = [&](const SymbolWindow& w) {
    for (const auto& k : x.cylinder.constraints) {
      if (w.at(k.position) != k.symbol) return false;
    }
    return true;
  };
  switch (spec.kind()) {
    case SystemKind::rotation:
      return in_u(std::get<CirclePoint>(pt).u);
    case SystemKind::skew: {
      const auto& p = std::get<TorusPoint>(pt);
      return in_u(p.u) && p.v >= x.c && p.v < x.d;
    }
    case SystemKind::bernoulli:
      return in_w(std::get<SymbolWindow>(pt));
    case SystemKind::product: {
      const auto& p = std::get<ProductPoint>(pt);
      return in_u(p.u) && in_w(p.w);
    }
  }
  return false;
}

double evaluate(const SystemSpec& spec, const Observable& f, const SystemPoint& x) {
  switch (f.kind) {
    case Observable::Kind::constant:
      return f.value;
    case Observable::Kind::indicator:
      return contains(spec, f.set, x) ? 1.0 : 0.0;
    case Observable::Kind::coordinate:
      break;
  }
  if (auto* p = std::get_if<CirclePoint>(&x)) return p->u;
  if (auto* p = std::get_if<TorusPoint>(&x)) return f.axis == 1 ? p->v : p->u;
  if (auto* p = std::get_if<SymbolWindow>(&x)) return p->at(f.position);
  const auto& p = std::get<ProductPoint>(x);
  return f.axis == 0 ? p.u : p.w.at(f.position);
}

double birkhoff_average(const SystemSpec& spec, const Observable& f, const SystemPoint& x0, std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("birkhoff average needs n >= 1");
  if (f.kind == Observable::Kind::indicator) validate(spec, f.set);
  long double sum = 0;
  SystemPoint x = x0;
  for (std::uint64_t j = 0; j < n; ++j) {
    sum += evaluate(spec, f, x);
    if (j + 1 < n) advance(spec, x);
  }
  return static_cast<double>(sum / n);
}

bool has_closed_form(const SystemSpec& spec, const TestSet& a, const TestSet& b) {
  if (spec.kind() == SystemKind::skew) return box_of(a).full_v() && box_of(b).full_v();
  return true;
}

CorrelationPoint correlation(const SystemSpec& spec, const TestSet& a, const TestSet& b, std::int64_t i,
                             const CorrelationMode& mode) {
  validate(spec, a);
  validate(spec, b);
  Box x = box_of(a);
  Box y = box_of(b);
  CorrelationPoint out;
  out.i = i;
  if (mode.exact) {
    if (!has_closed_form(spec, a, b)) {
      throw std::invalid_argument("no closed form for " + to_string(a) + " and " + to_string(b) + " on " + spec.name());
    }
    long double m = 1.0L;
    if (spec.has_gamma()) m = arc_overlap(x.a, x.b, spec.gamma().multiple_mod1(i), y.a, y.b);
    if (spec.has_shift()) {
      auto fixed = merged_constraints(x.cylinder, i, y.cylinder);
      if (!fixed) {
        m = 0;
      } else {
        for (const auto& [pos, sym] : *fixed) m *= spec.shift().prob_of(sym);
      }
    }
    out.value = static_cast<double>(m);
    out.exact = true;
    return out;
  }

  if (mode.samples < 1) throw std::invalid_argument("monte-carlo correlation needs samples >= 1");
  Rng rng(mode.seed);
  std::vector<double> cum;
  if (spec.has_shift()) cum = spec.shift().cumulative();
  double gi = spec.has_gamma() ? static_cast<double>(spec.gamma().multiple_mod1(i)) : 0.0;
  double gv = spec.kind() == SystemKind::skew ? static_cast<double>(spec.gamma().multiple_mod1(i * (i - 1) / 2)) : 0.0;
  std::uint64_t hits = 0;
  std::map<std::int64_t, int> w;
  for (std::uint64_t s = 0; s < mode.samples; ++s) {
    bool in = true;
    if (spec.has_gamma()) {
      double u = rng.uniform();
      double v = spec.kind() == SystemKind::skew ? rng.uniform() : 0.0;
      double ui = wrap(static_cast<long double>(u) + gi);
      double vi = wrap(static_cast<long double>(v) + static_cast<long double>(i) * u + gv);
      in = u >= x.a && u < x.b && v >= x.c && v < x.d && ui >= y.a && ui < y.b && vi >= y.c && vi < y.d;
    }
    if (spec.has_shift()) {
      // Coordinates drawn in increasing order, so the stream is reproducible.
      w.clear();
      for (const auto& k : x.cylinder.constraints) w.emplace(k.position, 0);
      for (const auto& k : y.cylinder.constraints) w.emplace(k.position + i, 0);
      for (auto& [pos, sym] : w) sym = draw_symbol(spec.shift(), cum, rng);
      for (const auto& k : x.cylinder.constraints) in = in && w[k.position] == k.symbol;
      for (const auto& k : y.cylinder.constraints) in = in && w[k.position + i] == k.symbol;
    }
    hits += in ? 1 : 0;
  }
  double p = static_cast<double>(hits) / static_cast<double>(mode.samples);
  out.value = p;
  out.standard_error = std::sqrt(std::max(p * (1 - p), 1.0 / static_cast<double>(mode.samples)) /
                                 static_cast<double>(mode.samples));
  return out;
}

MixingStatistic weak_mixing_statistic(const SystemSpec& spec, const TestSet& a, const TestSet& b, std::int64_t t,
                                      const CorrelationMode& mode) {
  if (t < 1) throw std::invalid_argument("weak-mixing statistic needs t >= 1");
  double base = measure(spec, a) * measure(spec, b);
  long double sum = 0, var = 0;
  for (std::int64_t i = 0; i < t; ++i) {
    CorrelationMode m = mode;
    if (!m.exact) m.seed = Rng::substream(mode.seed, static_cast<std::uint64_t>(i)).next();
    CorrelationPoint c = correlation(spec, a, b, i, m);
    sum += std::fabs(c.value - base);
    var += static_cast<long double>(c.standard_error) * c.standard_error;
  }
  MixingStatistic s;
  s.t = t;
  s.value = static_cast<double>(sum / t);
  s.exact = mode.exact;
  s.standard_error = static_cast<double>(std::sqrt(var) / t);
  return s;
}

bool spectral_weak_mixing_check(const SpectrumDescriptor& d) {
  return d.generators.empty() && d.unit_multiplicity == 1;
}

bool spectral_ergodicity_check(const SpectrumDescriptor& d) {
  if (d.unit_multiplicity != 1) return false;
  return std::all_of(d.generators.begin(), d.generators.end(), [](const PointGenerator& g) { return g.simple; });
}

}  // namespace ergodesk
