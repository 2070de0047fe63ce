#include "ergodesk/koopman.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ergodesk {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

std::int64_t isqrt64(std::int64_t n) { return static_cast<std::int64_t>(detail::isqrt(static_cast<unsigned __int128>(n))); }

std::int64_t zigzag(std::int64_t l) { return l >= 0 ? 2 * l : -2 * l - 1; }
std::int64_t unzigzag(std::int64_t z) { return z % 2 == 0 ? z / 2 : -(z + 1) / 2; }

std::int64_t cantor_pair(std::int64_t x, std::int64_t y) { return (x + y) * (x + y + 1) / 2 + y; }

std::pair<std::int64_t, std::int64_t> cantor_unpair(std::int64_t j) {
  std::int64_t w = (isqrt64(8 * j + 1) - 1) / 2;
  std::int64_t t = w * (w + 1) / 2;
  std::int64_t y = j - t;
  return {w - y, y};
}

std::int64_t shape_rank(std::int64_t m, std::int64_t n) { return m - m / n - 1; }
std::int64_t shape_unrank(std::int64_t q, std::int64_t n) { return q + 1 + q / (n - 1); }

void check_shape(std::int64_t m, std::size_t alphabet) {
  auto n = static_cast<std::int64_t>(alphabet);
  if (m < 1 || m % n == 0) {
    throw std::invalid_argument("shape code " + std::to_string(m) + " invalid for alphabet of size " + std::to_string(n));
  }
}

// Skew chains (m, r): |m| = t occupies [t(t-1), t(t+1)), positive m first.
std::int64_t skew_chain_index(std::int64_t m, std::int64_t r) {
  std::int64_t t = m < 0 ? -m : m;
  return t * (t - 1) + (m < 0 ? t : 0) + r;
}

std::pair<std::int64_t, std::int64_t> skew_chain_of(std::int64_t j) {
  std::int64_t t = (1 + isqrt64(1 + 4 * j)) / 2;
  while (t * (t - 1) > j) --t;
  while (t * (t + 1) <= j) ++t;
  std::int64_t off = j - t * (t - 1);
  if (off < t) return {t, off};
  return {-t, off - t};
}

const ProductBasisIndex& as_product(const BasisKey& key) {
  if (auto* p = std::get_if<ProductBasisIndex>(&key)) return *p;
  throw std::invalid_argument("basis key " + to_string(key) + " is not a cylinder index");
}

const FourierMode& as_fourier(const BasisKey& key) {
  if (auto* p = std::get_if<FourierMode>(&key)) return *p;
  throw std::invalid_argument("basis key " + to_string(key) + " is not a torus character");
}

void check_key(const SystemSpec& spec, const BasisKey& key) {
  switch (spec.kind()) {
    case SystemKind::rotation:
      if (as_fourier(key).m != 0) throw std::invalid_argument("rotation basis has only m = 0 characters");
      return;
    case SystemKind::skew:
      as_fourier(key);
      return;
    case SystemKind::bernoulli: {
      const auto& p = as_product(key);
      if (p.l != 0) throw std::invalid_argument("bernoulli basis has no circle factor");
      if (p.tail) check_shape(p.tail->m, spec.shift().size());
      return;
    }
    case SystemKind::product: {
      const auto& p = as_product(key);
      if (p.tail) check_shape(p.tail->m, spec.shift().size());
      return;
    }
  }
}

}  // namespace

std::string to_string(const BasisKey& key) {
  std::ostringstream os;
  if (auto* f = std::get_if<FourierMode>(&key)) {
    os << "g(" << f->k << "," << f->m << ")";
  } else {
    const auto& p = std::get<ProductBasisIndex>(key);
    if (!p.tail) {
      os << "hbar(" << p.l << ")";
    } else {
      os << (p.normalized ? "t(" : "p(") << p.l << "," << p.tail->k << "," << p.tail->m << ")";
    }
  }
  return os.str();
}

PhasedMode koopman_apply_skew(FourierMode mode) { return {Phase::gamma(mode.k), {mode.k + mode.m, mode.m}}; }

PhasedMode koopman_inverse_skew(FourierMode mode) {
  // U g_{k-m,m} = exp(2 pi i (k-m) gamma) g_{k,m}
  return {Phase::gamma(-(mode.k - mode.m)), {mode.k - mode.m, mode.m}};
}

Phase normalizing_phase(std::int64_t k, std::int64_t m) {
  if (m == 0) throw std::invalid_argument("normalizing phase undefined on the m = 0 row");
  std::int64_t r = floor_mod(k, m < 0 ? -m : m);
  std::int64_t j = (k - r) / m;
  // product of exp(2 pi i (r + s m) gamma) over s = 0..j-1, extended to j < 0
  return Phase::gamma(j * r + m * (j * (j - 1) / 2));
}

std::pair<Phase, ProductBasisIndex> koopman_apply_product(const ProductBasisIndex& idx) {
  ProductBasisIndex out = idx;
  if (!idx.tail) return {Phase::gamma(idx.l), out};
  out.tail->k += 1;
  return {idx.normalized ? Phase::one() : Phase::gamma(idx.l), out};
}

std::pair<Phase, ProductBasisIndex> koopman_inverse_product(const ProductBasisIndex& idx) {
  ProductBasisIndex out = idx;
  if (!idx.tail) return {Phase::gamma(-idx.l), out};
  out.tail->k -= 1;
  return {idx.normalized ? Phase::one() : Phase::gamma(-idx.l), out};
}

std::pair<Phase, BasisKey> koopman_apply(const SystemSpec& spec, const BasisKey& key) {
  check_key(spec, key);
  if (auto* f = std::get_if<FourierMode>(&key)) {
    auto pm = koopman_apply_skew(*f);
    return {pm.phase, pm.mode};
  }
  auto [ph, idx] = koopman_apply_product(std::get<ProductBasisIndex>(key));
  return {ph, idx};
}

std::pair<Phase, BasisKey> koopman_inverse(const SystemSpec& spec, const BasisKey& key) {
  check_key(spec, key);
  if (auto* f = std::get_if<FourierMode>(&key)) {
    auto pm = koopman_inverse_skew(*f);
    return {pm.phase, pm.mode};
  }
  auto [ph, idx] = koopman_inverse_product(std::get<ProductBasisIndex>(key));
  return {ph, idx};
}

std::vector<std::int64_t> shape_codes(std::size_t alphabet, std::int64_t bound) {
  std::vector<std::int64_t> out;
  auto n = static_cast<std::int64_t>(alphabet);
  for (std::int64_t m = 1; m <= bound; ++m) {
    if (m % n != 0) out.push_back(m);
  }
  return out;
}

std::vector<BasisKey> truncated_basis(const SystemSpec& spec, std::int64_t bound) {
  std::vector<BasisKey> out;
  switch (spec.kind()) {
    case SystemKind::rotation:
      for (std::int64_t k = -bound; k <= bound; ++k) out.emplace_back(FourierMode{k, 0});
      break;
    case SystemKind::skew:
      for (std::int64_t m = -bound; m <= bound; ++m) {
        for (std::int64_t k = -bound; k <= bound; ++k) out.emplace_back(FourierMode{k, m});
      }
      break;
    case SystemKind::bernoulli:
    case SystemKind::product: {
      std::int64_t lmax = spec.kind() == SystemKind::product ? bound : 0;
      auto shapes = shape_codes(spec.shift().size(), bound);
      for (std::int64_t l = -lmax; l <= lmax; ++l) {
        out.emplace_back(ProductBasisIndex{l, std::nullopt, false});
        for (auto m : shapes) {
          for (std::int64_t k = -bound; k <= bound; ++k) out.emplace_back(ProductBasisIndex{l, LebesgueTail{k, m}, false});
        }
      }
      break;
    }
  }
  return out;
}

std::vector<Orbit> orbit_decompose(const SystemSpec& spec, std::int64_t bound) {
  if (bound < 0) throw std::invalid_argument("truncation must be nonnegative");
  std::vector<Orbit> out;
  auto fixed = [&](BasisKey key, Phase value, std::string label) {
    Orbit o;
    o.kind = Orbit::Kind::fixed;
    o.members = {std::move(key)};
    o.proper_value = value;
    o.label = std::move(label);
    out.push_back(std::move(o));
  };
  switch (spec.kind()) {
    case SystemKind::rotation:
    case SystemKind::skew: {
      for (std::int64_t k = -bound; k <= bound; ++k) fixed(FourierMode{k, 0}, Phase::gamma(k), "h" + std::to_string(k));
      if (spec.kind() == SystemKind::rotation) break;
      for (std::int64_t m = -bound; m <= bound; ++m) {
        if (m == 0) continue;
        std::int64_t t = m < 0 ? -m : m;
        for (std::int64_t r = 0; r < t; ++r) {
          Orbit o;
          o.kind = Orbit::Kind::chain;
          o.partial = true;
          o.label = "m=" + std::to_string(m) + ",r=" + std::to_string(r);
          // members in U order: k -> k + m
          for (std::int64_t k = -bound; k <= bound; ++k) {
            if (floor_mod(k, t) == r) o.members.emplace_back(FourierMode{k, m});
          }
          if (m < 0) std::reverse(o.members.begin(), o.members.end());
          if (!o.members.empty()) out.push_back(std::move(o));
        }
      }
      break;
    }
    case SystemKind::bernoulli:
    case SystemKind::product: {
      std::int64_t lmax = spec.kind() == SystemKind::product ? bound : 0;
      auto shapes = shape_codes(spec.shift().size(), bound);
      for (std::int64_t l = -lmax; l <= lmax; ++l) {
        fixed(ProductBasisIndex{l, std::nullopt, false}, Phase::gamma(l), "hbar" + std::to_string(l));
      }
      for (std::int64_t l = -lmax; l <= lmax; ++l) {
        for (auto m : shapes) {
          Orbit o;
          o.kind = Orbit::Kind::chain;
          o.partial = true;
          o.label = "l=" + std::to_string(l) + ",shape=" + std::to_string(m);
          for (std::int64_t k = -bound; k <= bound; ++k) o.members.emplace_back(ProductBasisIndex{l, LebesgueTail{k, m}, false});
          out.push_back(std::move(o));
        }
      }
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(SpectrumTag tag) {
  switch (tag) {
    case SpectrumTag::pure_point:
      return "pure-point";
    case SpectrumTag::pure_continuous:
      return "pure-continuous";
    case SpectrumTag::mixed:
      return "mixed";
  }
  return "unknown";
}

SpectrumDescriptor SpectrumDescriptor::make(std::vector<PointGenerator> generators, std::uint64_t unit_multiplicity,
                                            Multiplicity lebesgue) {
  SpectrumDescriptor d;
  d.generators = std::move(generators);
  d.unit_multiplicity = unit_multiplicity;
  d.lebesgue = lebesgue;
  d.tag = d.derived_tag();
  return d;
}

SpectrumTag SpectrumDescriptor::derived_tag() const {
  if (lebesgue.is_zero()) return SpectrumTag::pure_point;
  if (generators.empty() && unit_multiplicity == 1) return SpectrumTag::pure_continuous;
  return SpectrumTag::mixed;
}

std::vector<std::pair<std::size_t, std::int64_t>> SpectrumDescriptor::proper_value_multiples(std::int64_t bound) const {
  std::vector<std::pair<std::size_t, std::int64_t>> out;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    for (std::int64_t k = -bound; k <= bound; ++k) out.emplace_back(g, k);
  }
  return out;
}

SpectrumDescriptor spectrum_of(const SystemSpec& spec) {
  switch (spec.kind()) {
    case SystemKind::rotation:
      return SpectrumDescriptor::make({{spec.gamma(), true}}, 1, Multiplicity::none());
    case SystemKind::skew:
    case SystemKind::product:
      return SpectrumDescriptor::make({{spec.gamma(), true}}, 1, Multiplicity::countable());
    case SystemKind::bernoulli:
      return SpectrumDescriptor::make({}, 1, Multiplicity::countable());
  }
  throw std::invalid_argument("invalid system spec");
}

namespace {

bool generators_related(const RotationNumber& x, const RotationNumber& y) {
  if (x == y) return true;
  if (!x.is_exact() || !y.is_exact()) return false;
  return point_spectrum_groups_equal(x, y, 16).forward.has_value();
}

}  // namespace

SpectrumDescriptor merge_point_spectra(const SpectrumDescriptor& a, const SpectrumDescriptor& b) {
  std::vector<PointGenerator> gens = a.generators;
  gens.insert(gens.end(), b.generators.begin(), b.generators.end());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (generators_related(gens[i].gamma, gens[j].gamma)) {
        gens[i].simple = false;
        gens[j].simple = false;
      }
    }
  }
  Multiplicity leb = a.lebesgue;
  if (!b.lebesgue.is_zero()) leb = b.lebesgue.infinite || a.lebesgue.infinite ? Multiplicity::countable() : Multiplicity{false, a.lebesgue.count + b.lebesgue.count};
  return SpectrumDescriptor::make(std::move(gens), a.unit_multiplicity * b.unit_multiplicity, leb);
}

GroupComparison point_spectrum_groups_equal(const RotationNumber& g1, const RotationNumber& g2, std::int64_t bound) {
  if (bound < 1) throw std::invalid_argument("search bound must be at least 1");
  const QuadraticNumber& x = g1.exact();
  const QuadraticNumber& y = g2.exact();
  GroupComparison out;
  out.bound = bound;
  if (QuadraticNumber::radicands_differ(x, y)) return out;
  auto search = [&](const QuadraticNumber& target, const QuadraticNumber& base) -> std::optional<std::int64_t> {
    for (std::int64_t t = 1; t <= bound; ++t) {
      for (std::int64_t a : {t, -t}) {
        if ((target - a * base).is_integer()) return a;
      }
    }
    return std::nullopt;
  };
  out.forward = search(y, x);
  out.backward = search(x, y);
  if (out.forward && out.backward && (*out.forward) * (*out.backward) == 1) {
    out.equal = true;
    int sign = *out.forward > 0 ? 1 : -1;
    out.relation = GammaRelation{sign, (y - static_cast<std::int64_t>(sign) * x).floor()};
  }
  return out;
}

bool same_spectrum(const SpectrumDescriptor& a, const SpectrumDescriptor& b, std::int64_t bound) {
  if (a.unit_multiplicity != b.unit_multiplicity || !(a.lebesgue == b.lebesgue)) return false;
  if (a.generators.size() != b.generators.size()) return false;
  for (std::size_t i = 0; i < a.generators.size(); ++i) {
    const auto& x = a.generators[i].gamma;
    const auto& y = b.generators[i].gamma;
    if (a.generators[i].simple != b.generators[i].simple) return false;
    if (x == y) continue;
    if (!point_spectrum_groups_equal(x, y, bound).equal) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

std::string to_string(const SpectralLabel& label) {
  if (auto* p = std::get_if<PointLabel>(&label)) return "h[" + std::to_string(p->k) + "]";
  const auto& c = std::get<ChainLabel>(label);
  return "h[" + std::to_string(c.i) + "," + std::to_string(c.j) + "]";
}

SpectralBasis::SpectralBasis(SystemSpec spec) : spec_(std::move(spec)) {}

bool SpectralBasis::has_point(std::int64_t k) const { return spec_.kind() != SystemKind::bernoulli || k == 0; }

Phase SpectralBasis::point_value(std::int64_t k) const {
  if (!has_point(k)) throw std::invalid_argument("no proper function with index " + std::to_string(k));
  return Phase::gamma(k);
}

LabeledElement SpectralBasis::element(const SpectralLabel& label) const {
  if (auto* p = std::get_if<PointLabel>(&label)) {
    if (!has_point(p->k)) throw std::invalid_argument("no proper function " + to_string(label));
    if (spec_.kind() == SystemKind::rotation || spec_.kind() == SystemKind::skew) {
      return {Phase::one(), FourierMode{p->k, 0}};
    }
    return {Phase::one(), ProductBasisIndex{p->k, std::nullopt, false}};
  }
  const auto& c = std::get<ChainLabel>(label);
  if (c.j < 0) throw std::invalid_argument("negative chain index");
  switch (spec_.kind()) {
    case SystemKind::rotation:
      throw std::invalid_argument("rotation has no Lebesgue chains");
    case SystemKind::skew: {
      auto [m, r] = skew_chain_of(c.j);
      std::int64_t k = r + c.i * m;
      return {normalizing_phase(k, m), FourierMode{k, m}};
    }
    case SystemKind::bernoulli: {
      auto n = static_cast<std::int64_t>(spec_.shift().size());
      return {Phase::one(), ProductBasisIndex{0, LebesgueTail{c.i, shape_unrank(c.j, n)}, false}};
    }
    case SystemKind::product: {
      auto n = static_cast<std::int64_t>(spec_.shift().size());
      auto [zl, q] = cantor_unpair(c.j);
      std::int64_t l = unzigzag(zl);
      return {Phase::gamma(l * c.i), ProductBasisIndex{l, LebesgueTail{c.i, shape_unrank(q, n)}, false}};
    }
  }
  throw std::invalid_argument("invalid system spec");
}

std::pair<SpectralLabel, Phase> SpectralBasis::locate(const BasisKey& key) const {
  check_key(spec_, key);
  if (auto* f = std::get_if<FourierMode>(&key)) {
    if (f->m == 0) return {PointLabel{f->k}, Phase::one()};
    std::int64_t t = f->m < 0 ? -f->m : f->m;
    std::int64_t r = floor_mod(f->k, t);
    std::int64_t i = (f->k - r) / f->m;
    return {ChainLabel{i, skew_chain_index(f->m, r)}, normalizing_phase(f->k, f->m).inverse()};
  }
  const auto& p = std::get<ProductBasisIndex>(key);
  if (!p.tail) return {PointLabel{p.l}, Phase::one()};
  auto n = static_cast<std::int64_t>(spec_.shift().size());
  if (spec_.kind() == SystemKind::bernoulli) return {ChainLabel{p.tail->k, shape_rank(p.tail->m, n)}, Phase::one()};
  std::int64_t j = cantor_pair(zigzag(p.l), shape_rank(p.tail->m, n));
  Phase c = p.normalized ? Phase::one() : Phase::gamma(-p.l * p.tail->k);
  return {ChainLabel{p.tail->k, j}, c};
}

std::vector<SpectralLabel> SpectralBasis::truncated_labels(std::int64_t bound) const {
  std::vector<SpectralLabel> out;
  for (std::int64_t k = -bound; k <= bound; ++k) {
    if (has_point(k)) out.emplace_back(PointLabel{k});
  }
  if (has_chains()) {
    for (std::int64_t j = 0; j <= 2 * bound; ++j) {
      for (std::int64_t i = -bound; i <= bound; ++i) out.emplace_back(ChainLabel{i, j});
    }
  }
  return out;
}

std::string SpectralBasis::labeling_description() const {
  switch (spec_.kind()) {
    case SystemKind::rotation:
      return "h[k] = g(k,0)";
    case SystemKind::skew:
      return "h[k] = g(k,0); h[i,j] = a(k,m) g(k,m), k = r + i m, chains (m,r) ordered by |m|, m>0 first, then r";
    case SystemKind::bernoulli:
      return "h[0] = 1; h[i,j] = d(i, shape of rank j)";
    case SystemKind::product:
      return "h[k] = exp(2 pi i k u); h[i,j] = t(l,i,m), j = cantor(zigzag(l), rank(m))";
  }
  return "";
}

// ---------------------------------------------------------------------------

IntertwinerPairing build_intertwiner(const SystemSpec& a, const SystemSpec& b, std::int64_t truncation) {
  if (truncation < 0) throw std::invalid_argument("truncation must be nonnegative");
  auto da = spectrum_of(a);
  auto db = spectrum_of(b);
  if (!(da.lebesgue == db.lebesgue)) throw std::invalid_argument("descriptors incompatible: Lebesgue multiplicities differ");
  if (da.generators.size() != db.generators.size()) {
    throw std::invalid_argument("descriptors incompatible: point spectra differ");
  }
  IntertwinerPairing out{a, b, truncation, {}, {}};
  if (!da.generators.empty()) {
    const auto& ga = da.generators.front().gamma;
    const auto& gb = db.generators.front().gamma;
    if (!(ga == gb)) {
      auto cmp = point_spectrum_groups_equal(ga, gb, 64);
      if (!cmp.equal) throw std::invalid_argument("descriptors incompatible: proper-value groups differ");
      out.relation = *cmp.relation;
    }
  }
  SpectralBasis ba(a);
  for (const auto& label : ba.truncated_labels(truncation)) {
    if (auto* p = std::get_if<PointLabel>(&label)) {
      out.pairs.emplace_back(label, PointLabel{out.relation.sign * p->k});
    } else {
      out.pairs.emplace_back(label, label);
    }
  }
  return out;
}

IntertwinerCheck verify_intertwiner(const IntertwinerPairing& pairing, std::int64_t truncation) {
  SpectralBasis ba(pairing.a);
  SpectralBasis bb(pairing.b);
  std::map<SpectralLabel, SpectralLabel> forward(pairing.pairs.begin(), pairing.pairs.end());
  const RotationNumber reference = pairing.a.has_gamma() ? pairing.a.gamma() : RotationNumber::silver();

  auto image = [](const SpectralBasis& basis, const SpectralLabel& label) {
    auto el = basis.element(label);
    auto [ph, key] = koopman_apply(basis.spec(), el.key);
    auto [next, c] = basis.locate(key);
    return std::pair<SpectralLabel, Phase>{next, el.coeff * ph * c};
  };

  IntertwinerCheck out;
  for (const auto& [la, lb] : pairing.pairs) {
    if (auto* c = std::get_if<ChainLabel>(&la); c && (c->i >= truncation || c->i < -truncation)) continue;
    if (auto* p = std::get_if<PointLabel>(&la); p && (p->k > truncation || p->k < -truncation)) continue;
    ++out.checked;
    // W(U h) versus V(W h)
    auto [next_a, alpha] = image(ba, la);
    auto it = forward.find(next_a);
    auto [next_b, beta] = image(bb, lb);
    Phase beta_a = beta.with_gamma_sign(pairing.relation.sign);
    bool ok = it != forward.end() && it->second == next_b && alpha == beta_a;
    if (!ok) {
      ++out.mismatches;
      double r = std::abs(alpha.evaluate(reference) - beta_a.evaluate(reference));
      if (it == forward.end() || !(it->second == next_b)) r = std::max(r, 2.0);
      out.max_residual = std::max(out.max_residual, r);
    }
  }
  return out;
}

ProperModes proper_modes_of_skew(std::int64_t bound) {
  ProperModes out;
  auto skew = SystemSpec::skew(RotationNumber::silver());
  bool ok = true;
  for (const auto& orbit : orbit_decompose(skew, bound)) {
    if (orbit.kind == Orbit::Kind::fixed) {
      out.modes.emplace_back(std::get<FourierMode>(orbit.members.front()), orbit.proper_value);
      continue;
    }
    ++out.chains_checked;
    // a finitely supported eigenvector needs a shift-invariant finite support
    const auto& last = std::get<FourierMode>(orbit.members.back());
    auto next = koopman_apply_skew(last).mode;
    for (const auto& member : orbit.members) {
      if (std::get<FourierMode>(member) == next || next.m == 0) ok = false;
    }
  }
  out.certified = ok;
  return out;
}

}  // namespace ergodesk
