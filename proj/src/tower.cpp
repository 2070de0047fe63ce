#include "ergodesk/tower.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <numeric>
#include <tuple>

namespace ergodesk {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

// g = s*a + t*b with g = gcd(a, b) >= 0.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
  std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    std::int64_t q = a / b;
    std::tie(a, b) = std::pair{b, a - q * b};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
    std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
  }
  if (a < 0) {
    a = -a;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return a;
}

std::string mode_string(FourierMode m) { return "(" + std::to_string(m.k) + "," + std::to_string(m.m) + ")"; }

}  // namespace

CharacterLattice CharacterLattice::generated_by(const std::vector<FourierMode>& generators) {
  CharacterLattice l;
  for (const auto& g : generators) l = l.with(g);
  return l;
}

CharacterLattice CharacterLattice::with(FourierMode g) const {
  CharacterLattice l = *this;
  if (g.k == 0) {
    l.r_ = std::gcd(l.r_, g.m);
  } else if (l.p_ == 0) {
    l.r_ = std::gcd(l.r_, l.q_);
    l.p_ = g.k;
    l.q_ = g.m;
  } else {
    std::int64_t s = 0, t = 0;
    std::int64_t d = ext_gcd(l.p_, g.k, s, t);
    std::int64_t z = (g.k / d) * l.q_ - (l.p_ / d) * g.m;
    l.q_ = s * l.q_ + t * g.m;
    l.p_ = d;
    l.r_ = std::gcd(l.r_, z);
  }
  if (l.p_ < 0) {
    l.p_ = -l.p_;
    l.q_ = -l.q_;
  }
  if (l.p_ == 0) {
    l.r_ = std::gcd(l.r_, l.q_);
    l.q_ = 0;
  }
  if (l.r_ > 0) l.q_ = floor_mod(l.q_, l.r_);
  return l;
}

bool CharacterLattice::contains(FourierMode mode) const {
  std::int64_t rem = mode.m;
  if (p_ == 0) {
    if (mode.k != 0) return false;
  } else {
    if (mode.k % p_ != 0) return false;
    rem -= (mode.k / p_) * q_;
  }
  return r_ == 0 ? rem == 0 : rem % r_ == 0;
}

bool CharacterLattice::subset_of(const CharacterLattice& other) const {
  for (const auto& g : generators()) {
    if (!other.contains(g)) return false;
  }
  return true;
}

std::int64_t CharacterLattice::row_generator() const {
  if (p_ == 0) return 0;
  if (r_ == 0) return q_ == 0 ? p_ : 0;
  return p_ * (r_ / std::gcd(q_, r_));
}

std::vector<FourierMode> CharacterLattice::generators() const {
  std::vector<FourierMode> g;
  if (p_ != 0) g.push_back({p_, q_});
  if (r_ != 0) g.push_back({0, r_});
  return g;
}

std::string CharacterLattice::describe() const {
  auto g = generators();
  if (g.empty()) return "{0}";
  std::string s = "<";
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) s += ", ";
    s += mode_string(g[i]);
  }
  return s + ">";
}

TowerLevel constants_level() { return TowerLevel{}; }

TowerLevel tower_step(const TowerLevel& level, const SystemSpec& spec) {
  TowerLevel out;
  out.depth = level.depth + 1;
  switch (spec.kind()) {
    case SystemKind::rotation:
      out.characters = CharacterLattice::generated_by({{1, 0}});
      break;
    case SystemKind::skew: {
      // (k, m) is kept iff (m, 0) is in the level, i.e. m in dZ.
      std::int64_t d = level.characters.row_generator();
      out.characters = CharacterLattice::generated_by({{1, 0}, {0, d}});
      break;
    }
    default:
      throw std::invalid_argument("tower: " + to_string(spec.kind()) + " has no character-lattice structure");
  }
  out.characters = CharacterLattice::generated_by([&] {
    auto g = out.characters.generators();
    for (const auto& h : level.characters.generators()) g.push_back(h);
    return g;
  }());
  return out;
}

std::vector<TowerLevel> compute_tower(const SystemSpec& spec, int max_depth) {
  if (max_depth < 1) throw std::invalid_argument("tower depth must be at least 1");
  if (spec.kind() != SystemKind::rotation && spec.kind() != SystemKind::skew) {
    throw std::invalid_argument("tower: " + to_string(spec.kind()) + " has no character-lattice structure");
  }
  std::vector<TowerLevel> levels{constants_level()};
  while (static_cast<int>(levels.size()) < max_depth) levels.push_back(tower_step(levels.back(), spec));
  return levels;
}

int stabilization_depth(const SystemSpec& spec, int max_depth) {
  auto levels = compute_tower(spec, max_depth + 1);
  for (std::size_t n = 0; n + 1 < levels.size(); ++n) {
    if (levels[n] == levels[n + 1]) return static_cast<int>(n) + 1;
  }
  return 0;
}

Quotient quotient_homomorphism(const SystemSpec& spec, const TowerLevel& level, FourierMode character) {
  if (!level.contains(character)) {
    throw std::invalid_argument("character " + mode_string(character) + " is not in level " +
                                level.characters.describe());
  }
  switch (spec.kind()) {
    case SystemKind::skew:
      return {Phase::gamma(character.k), {character.m, 0}};
    case SystemKind::rotation:
      if (character.m != 0) throw std::invalid_argument("rotation characters have m = 0");
      return {Phase::gamma(character.k), {0, 0}};
    default:
      throw std::invalid_argument("quotient: " + to_string(spec.kind()) + " has no character-lattice structure");
  }
}

bool quotient_is_multiplicative(const SystemSpec& spec, const TowerLevel& level, FourierMode a, FourierMode b) {
  Quotient qa = quotient_homomorphism(spec, level, a);
  Quotient qb = quotient_homomorphism(spec, level, b);
  Quotient qab = quotient_homomorphism(spec, level, {a.k + b.k, a.m + b.m});
  return qab.constant == qa.constant * qb.constant &&
         qab.character == FourierMode{qa.character.k + qb.character.k, qa.character.m + qb.character.m};
}

CharacterLattice sampled_tower_step(const TorusMap& map, const CharacterLattice& level, int window) {
  if (window < 1) throw std::invalid_argument("sampled tower step: window must be positive");
  const int reach = 2 * window + 2;
  const int grid = 8 * window + 8;
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<TorusPoint> pts;
  std::vector<TorusPoint> images;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      TorusPoint x{static_cast<double>(i) / grid, static_cast<double>(j) / grid};
      pts.push_back(x);
      images.push_back(map(x));
    }
  }
  auto chi = [&](FourierMode c, TorusPoint x) { return std::polar(1.0, two_pi * (c.k * x.u + c.m * x.v)); };
  std::vector<FourierMode> candidates;
  for (int k = -reach; k <= reach; ++k) {
    for (int m = -reach; m <= reach; ++m) {
      if (level.contains({k, m})) candidates.push_back({k, m});
    }
  }
  CharacterLattice out = level;
  for (int k = -window; k <= window; ++k) {
    for (int m = -window; m <= window; ++m) {
      FourierMode c{k, m};
      std::vector<std::complex<double>> q(pts.size());
      for (std::size_t i = 0; i < pts.size(); ++i) q[i] = chi(c, images[i]) * std::conj(chi(c, pts[i]));
      for (const auto& cand : candidates) {
        std::complex<double> acc = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) acc += q[i] * std::conj(chi(cand, pts[i]));
        if (std::abs(acc) / static_cast<double>(pts.size()) > 1 - 1e-9) {
          out = out.with(c);
          break;
        }
      }
    }
  }
  return out;
}

std::string to_string(TowerProvenance p) {
  return p == TowerProvenance::exact ? "exact" : "residual-certified";
}

TowerEvidence tower_evidence(const SystemSpec& spec, const TowerOptions& options) {
  TowerEvidence ev;
  ev.system = spec.name();
  if (spec.kind() == SystemKind::rotation || spec.kind() == SystemKind::skew) {
    ev.provenance = TowerProvenance::exact;
    ev.levels = compute_tower(spec, 4);
    ev.stable = ev.levels[1] == ev.levels[2];
    return ev;
  }
  if (spec.kind() != SystemKind::product) {
    throw std::invalid_argument("tower: " + to_string(spec.kind()) + " has no character-lattice structure");
  }
  ev.provenance = TowerProvenance::residual_certified;
  ev.levels.push_back(constants_level());
  TowerLevel proper;
  proper.depth = 2;
  proper.characters = CharacterLattice::generated_by({{1, 0}});
  ev.levels.push_back(proper);
  bool extra = false;
  for (std::int64_t k : options.ks) {
    ResidualThresholds t = calibrate_thresholds(spec, k, options.cutoff);
    for (int n : options.windows) {
      ResidualOptions ro;
      ro.window = n;
      ro.cutoff = options.cutoff;
      ResidualReport r = quasi_eigen_residual_search(spec, k, ro);
      QuasiEigenVerdict v = classify_residual(r.residual, t);
      ev.residuals.push_back(r);
      ev.thresholds.push_back(t);
      if (v == QuasiEigenVerdict::inconclusive || (k == 0 && v != QuasiEigenVerdict::exists)) {
        throw InconclusiveError("residual " + std::to_string(r.residual) + " for k = " + std::to_string(k) +
                                " at window " + std::to_string(n) + " lies between thresholds " +
                                std::to_string(t.accept_at) + " and " + std::to_string(t.reject_at));
      }
      if (k != 0 && v == QuasiEigenVerdict::exists) extra = true;
    }
  }
  ev.stable = !extra;
  if (ev.stable) {
    proper.depth = 3;
    ev.levels.push_back(proper);
  }
  return ev;
}

TowerVerdict towers_distinguish(const SystemSpec& a, const SystemSpec& b, const TowerOptions& options) {
  TowerVerdict v{false, tower_evidence(a, options), tower_evidence(b, options)};
  v.distinguished = v.a.stable != v.b.stable;
  return v;
}

}  // namespace ergodesk
