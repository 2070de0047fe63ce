#include "ergodesk/residual.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace ergodesk {

namespace {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t floor_mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

cd unit(double turns) { return std::polar(1.0, kTwoPi * turns); }

cd gamma_phase(const RotationNumber& gamma, std::int64_t l) {
  return unit(static_cast<double>(gamma.multiple_mod1(l)));
}

// phi_0 = 1 and orthonormal centred phi_1..phi_{n-1} under the symbol weights,
// by Gram-Schmidt on {1, indicator_0, ..., indicator_{n-2}}.
std::vector<std::vector<double>> symbol_functions(const std::vector<double>& p) {
  std::size_t n = p.size();
  std::vector<std::vector<double>> phi;
  phi.push_back(std::vector<double>(n, 1.0));
  for (std::size_t e = 0; e + 1 < n; ++e) {
    std::vector<double> f(n, 0.0);
    f[e] = 1.0;
    for (const auto& g : phi) {
      double dot = 0;
      for (std::size_t x = 0; x < n; ++x) dot += p[x] * f[x] * g[x];
      for (std::size_t x = 0; x < n; ++x) f[x] -= dot * g[x];
    }
    double norm = 0;
    for (std::size_t x = 0; x < n; ++x) norm += p[x] * f[x] * f[x];
    norm = std::sqrt(norm);
    for (auto& v : f) v /= norm;
    phi.push_back(std::move(f));
  }
  return phi;
}

struct BlockMinimum {
  double lambda = 0;
  double theta = 0;
  Vec c;
};

double min_generalized_eigenvalue(const Mat& h, const Mat& gin) {
  if (h.rows() == 1) return (h(0, 0) / gin(0, 0)).real();
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(h, gin, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

Mat residual_form(const Mat& a, const Mat& b, const Mat& c, double theta) {
  cd d = std::polar(1.0, theta);
  return a + b - d * c - std::conj(d) * c.adjoint();
}

// min over theta and c of c^H (A + B - e^{i theta} C - e^{-i theta} C^H) c / c^H Gin c.
BlockMinimum minimize_block(const Mat& gin, const Mat& a, const Mat& b, const Mat& c, int samples, bool want_vector) {
  BlockMinimum best;
  auto lam = [&](double th) { return min_generalized_eigenvalue(residual_form(a, b, c, th), gin); };
  if (gin.rows() == 1) {
    cd z = c(0, 0);
    best.theta = std::abs(z) > 0 ? -std::arg(z) : 0.0;
    best.lambda = ((a(0, 0) + b(0, 0)).real() - 2 * std::abs(z)) / gin(0, 0).real();
  } else {
    int js = 0;
    double lo = std::numeric_limits<double>::infinity();
    for (int j = 0; j < samples; ++j) {
      double v = lam(kTwoPi * j / samples);
      if (v < lo) {
        lo = v;
        js = j;
      }
    }
    double x0 = kTwoPi * (js - 1) / samples;
    double x3 = kTwoPi * (js + 1) / samples;
    const double ratio = (std::sqrt(5.0) - 1) / 2;
    double x1 = x3 - ratio * (x3 - x0);
    double x2 = x0 + ratio * (x3 - x0);
    double f1 = lam(x1);
    double f2 = lam(x2);
    for (int it = 0; it < 60; ++it) {
      if (f1 < f2) {
        x3 = x2;
        x2 = x1;
        f2 = f1;
        x1 = x3 - ratio * (x3 - x0);
        f1 = lam(x1);
      } else {
        x0 = x1;
        x1 = x2;
        f1 = f2;
        x2 = x0 + ratio * (x3 - x0);
        f2 = lam(x2);
      }
    }
    best.theta = f1 < f2 ? x1 : x2;
    best.lambda = std::min({lo, f1, f2});
    if (lo <= best.lambda && lo < std::min(f1, f2)) best.theta = kTwoPi * js / samples;
  }
  if (want_vector) {
    if (gin.rows() == 1) {
      best.c = Vec::Ones(1) / std::sqrt(gin(0, 0).real());
    } else {
      Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(residual_form(a, b, c, best.theta), gin);
      best.c = es.eigenvectors().col(0);
      double nrm = std::sqrt((best.c.adjoint() * gin * best.c)(0, 0).real());
      best.c /= nrm;
    }
  }
  return best;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

struct TrialFunction {
  std::int64_t l = 0;
  std::int64_t s = 0;  // cylinder pattern code or v-frequency
  cd phase;            // P b = phase * (output at (p_freq, p_s))
  std::int64_t p_freq = 0;
  std::int64_t p_s = 0;
};

class GridGram {
 public:
  GridGram(bool skew, int grid, std::size_t alphabet, std::vector<std::vector<double>> pair_weights)
      : skew_(skew), grid_(grid), n_(static_cast<std::int64_t>(alphabet)), e_(std::move(pair_weights)) {
    table_.resize(static_cast<std::size_t>(grid));
    for (int d = 0; d < grid; ++d) {
      cd acc = 0;
      for (int g = 0; g < grid; ++g) acc += unit(static_cast<double>(floor_mod(static_cast<std::int64_t>(d) * g, grid)) / grid);
      table_[static_cast<std::size_t>(d)] = acc / static_cast<double>(grid);
    }
  }

  cd u(std::int64_t a, std::int64_t b) const { return table_[static_cast<std::size_t>(floor_mod(b - a, grid_))]; }

  cd s(std::int64_t x, std::int64_t y) const {
    if (skew_) return u(x, y);
    double acc = 1.0;
    while (x != 0 || y != 0) {
      acc *= e_[static_cast<std::size_t>(x % n_)][static_cast<std::size_t>(y % n_)];
      x /= n_;
      y /= n_;
    }
    return acc;
  }

  cd both(std::int64_t a, std::int64_t x, std::int64_t b, std::int64_t y) const { return u(a, b) * s(x, y); }

 private:
  bool skew_;
  std::int64_t grid_;
  std::int64_t n_;
  std::vector<std::vector<double>> e_;
  std::vector<cd> table_;
};

std::int64_t pattern_weight(std::int64_t code, std::int64_t n) {
  std::int64_t w = 0;
  for (; code != 0; code /= n) w += (code % n) != 0;
  return w;
}

std::string signature(const Mat& gin, const Mat& a, const Mat& b, const Mat& c) {
  std::string key;
  key.reserve(static_cast<std::size_t>(gin.size()) * 4 * 24);
  key += std::to_string(gin.rows());
  for (const Mat* m : {&gin, &a, &b, &c}) {
    for (Eigen::Index i = 0; i < m->size(); ++i) {
      cd z = (*m)(i);
      key += ',';
      key += std::to_string(std::llround(z.real() * 1e9));
      key += ':';
      key += std::to_string(std::llround(z.imag() * 1e9));
    }
  }
  return key;
}

}  // namespace

ResidualReport quasi_eigen_residual_search(const SystemSpec& spec, std::int64_t k, const ResidualOptions& options) {
  const bool skew = spec.kind() == SystemKind::skew;
  if (!skew && spec.kind() != SystemKind::product) {
    throw std::invalid_argument("residual search needs rotation x shift or the skew map, got " + spec.name());
  }
  const int window = options.window;
  const int grid = options.grid == 0 ? 4 * window : options.grid;
  const int cutoff = options.cutoff;
  if (window < 2) throw std::invalid_argument("residual search: window must be at least 2");
  if (cutoff < 0) throw std::invalid_argument("residual search: negative frequency cutoff");
  if (options.theta_samples < 4) throw std::invalid_argument("residual search: too few phase samples");
  std::int64_t reach = cutoff + std::max<std::int64_t>(k < 0 ? -k : k, skew ? window : 0);
  if (grid < 4 * window || grid <= 2 * reach) {
    throw std::invalid_argument("degenerate grid: " + std::to_string(grid) + " points cannot resolve frequencies up to " +
                                std::to_string(reach) + " at window " + std::to_string(window));
  }

  const RotationNumber& gamma = spec.gamma();
  std::size_t alphabet = skew ? 0 : spec.shift().size();
  auto n = static_cast<std::int64_t>(alphabet);
  std::vector<std::vector<double>> pair_weights;
  std::int64_t patterns = 0;
  if (!skew) {
    auto phi = symbol_functions(spec.shift().probs);
    pair_weights.assign(alphabet, std::vector<double>(alphabet, 0.0));
    for (std::size_t a = 0; a < alphabet; ++a) {
      for (std::size_t b = 0; b < alphabet; ++b) {
        for (std::size_t x = 0; x < alphabet; ++x) pair_weights[a][b] += spec.shift().probs[x] * phi[a][x] * phi[b][x];
      }
    }
    patterns = 1;
    for (int j = 0; j < window; ++j) {
      patterns *= n;
      if (patterns > (std::int64_t{1} << 22)) throw std::invalid_argument("residual search: cylinder basis too large");
    }
  }
  GridGram gram(skew, grid, alphabet, pair_weights);

  std::vector<TrialFunction> trials;
  for (std::int64_t l = -cutoff; l <= cutoff; ++l) {
    cd ph = gamma_phase(gamma, l);
    if (skew) {
      for (std::int64_t m = -window; m <= window; ++m) trials.push_back({l, m, ph, l + m, m});
    } else {
      for (std::int64_t code = 0; code < patterns; ++code) trials.push_back({l, code, ph, l, code * n});
    }
  }

  auto key_of = [&](std::int64_t freq, std::int64_t s) {
    return std::pair{floor_mod(freq, grid), skew ? floor_mod(s, grid) : s};
  };
  UnionFind uf(trials.size());
  {
    std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> owner;
    auto claim = [&](std::pair<std::int64_t, std::int64_t> key, std::size_t i) {
      auto [it, fresh] = owner.emplace(key, i);
      if (!fresh) uf.unite(it->second, i);
    };
    for (std::size_t i = 0; i < trials.size(); ++i) {
      claim(key_of(trials[i].p_freq, trials[i].p_s), i);
      claim(key_of(trials[i].l + k, trials[i].s), i);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> components;
  for (std::size_t i = 0; i < trials.size(); ++i) components[uf.find(i)].push_back(i);

  struct Block {
    Mat gin, a, b, c;
  };
  auto assemble = [&](const std::vector<std::size_t>& idx) {
    auto d = static_cast<Eigen::Index>(idx.size());
    Block blk{Mat(d, d), Mat(d, d), Mat(d, d), Mat(d, d)};
    for (Eigen::Index i = 0; i < d; ++i) {
      const auto& ti = trials[idx[static_cast<std::size_t>(i)]];
      for (Eigen::Index j = 0; j < d; ++j) {
        const auto& tj = trials[idx[static_cast<std::size_t>(j)]];
        blk.gin(i, j) = gram.both(ti.l, ti.s, tj.l, tj.s);
        blk.a(i, j) = std::conj(ti.phase) * tj.phase * gram.both(ti.p_freq, ti.p_s, tj.p_freq, tj.p_s);
        blk.b(i, j) = gram.both(ti.l + k, ti.s, tj.l + k, tj.s);
        blk.c(i, j) = std::conj(ti.phase) * gram.both(ti.p_freq, ti.p_s, tj.l + k, tj.s);
      }
    }
    return blk;
  };

  // Components in order of their leading trial: smallest |l|, then smallest
  // second-factor index.
  auto rank_of = [&](std::size_t i) {
    const auto& t = trials[i];
    return std::tuple{t.l < 0 ? -t.l : t.l, t.s < 0 ? -t.s : t.s, t.l, t.s};
  };
  std::vector<std::vector<std::size_t>> ordered;
  ordered.reserve(components.size());
  for (auto& [root, idx] : components) ordered.push_back(std::move(idx));
  for (auto& idx : ordered) {
    std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return rank_of(x) < rank_of(y); });
  }
  std::sort(ordered.begin(), ordered.end(),
            [&](const auto& x, const auto& y) { return rank_of(x.front()) < rank_of(y.front()); });

  std::unordered_map<std::string, double> cache;
  double best_lambda = std::numeric_limits<double>::infinity();
  std::size_t best = 0;
  for (std::size_t ci = 0; ci < ordered.size(); ++ci) {
    Block blk = assemble(ordered[ci]);
    std::string sig = signature(blk.gin, blk.a, blk.b, blk.c);
    auto it = cache.find(sig);
    double lam;
    if (it != cache.end()) {
      lam = it->second;
    } else {
      lam = minimize_block(blk.gin, blk.a, blk.b, blk.c, options.theta_samples, false).lambda;
      cache.emplace(std::move(sig), lam);
    }
    if (lam < best_lambda - 1e-12) {
      best_lambda = lam;
      best = ci;
    }
  }

  const auto& idx = ordered[best];
  Block blk = assemble(idx);
  BlockMinimum m = minimize_block(blk.gin, blk.a, blk.b, blk.c, options.theta_samples, true);
  cd z = (m.c.adjoint() * blk.c * m.c)(0, 0);
  cd delta = std::abs(z) > 0 ? std::conj(z) / std::abs(z) : cd{1.0};

  // Residual in output coordinates, so exact cancellations stay exact.
  std::map<std::pair<std::int64_t, std::int64_t>, std::pair<std::int64_t, std::int64_t>> rep;
  std::map<std::pair<std::int64_t, std::int64_t>, cd> coeff;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const auto& t = trials[idx[i]];
    cd ci = m.c(static_cast<Eigen::Index>(i));
    auto kp = key_of(t.p_freq, t.p_s);
    auto km = key_of(t.l + k, t.s);
    rep.emplace(kp, std::pair{t.p_freq, t.p_s});
    rep.emplace(km, std::pair{t.l + k, t.s});
    coeff[kp] += t.phase * ci;
    coeff[km] -= delta * ci;
  }
  cd norm2 = 0;
  for (const auto& [kx, vx] : coeff) {
    for (const auto& [ky, vy] : coeff) {
      norm2 += std::conj(vx) * vy * gram.both(rep[kx].first, rep[kx].second, rep[ky].first, rep[ky].second);
    }
  }

  ResidualReport r;
  r.k = k;
  r.window = window;
  r.grid = grid;
  r.cutoff = cutoff;
  r.residual = std::sqrt(std::max(0.0, norm2.real()));
  r.delta_turns = std::arg(delta) / kTwoPi;
  if (r.delta_turns < 0) r.delta_turns += 1.0;
  r.basis_size = trials.size();
  r.components = ordered.size();
  r.profile.assign(static_cast<std::size_t>(window) + 1, 0.0);
  std::size_t lead = 0;
  double lead_mass = -1;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const auto& t = trials[idx[i]];
    double mass = std::norm(m.c(static_cast<Eigen::Index>(i)));
    std::int64_t bin = skew ? (t.s < 0 ? -t.s : t.s) : pattern_weight(t.s, n);
    r.profile[static_cast<std::size_t>(bin)] += mass;
    if (mass > lead_mass + 1e-12) {
      lead_mass = mass;
      lead = idx[i];
    }
  }
  const auto& t = trials[lead];
  r.minimizer = skew ? "exp(2 pi i (" + std::to_string(t.l) + " u + " + std::to_string(t.s) + " v))"
                     : "exp(2 pi i " + std::to_string(t.l) + " u) * cylinder pattern " + std::to_string(t.s);
  return r;
}

double dense_reference_residual(const SystemSpec& spec, std::int64_t k, int window, int grid, int cutoff) {
  if (spec.kind() != SystemKind::product) throw std::invalid_argument("dense reference needs rotation x shift");
  if (window < 1 || window > 6) throw std::invalid_argument("dense reference: window must be in [1, 6]");
  if (grid <= 2 * (cutoff + (k < 0 ? -k : k))) throw std::invalid_argument("dense reference: degenerate grid");
  const auto& probs = spec.shift().probs;
  auto n = static_cast<std::int64_t>(probs.size());
  auto phi = symbol_functions(probs);
  const RotationNumber& gamma = spec.gamma();
  const double g_frac = static_cast<double>(gamma.multiple_mod1(1));

  std::int64_t patterns = 1;
  for (int j = 0; j < window; ++j) patterns *= n;
  std::int64_t words = patterns * n;  // coordinates 0..window
  auto cols = static_cast<Eigen::Index>((2 * cutoff + 1) * patterns);
  auto rows = static_cast<Eigen::Index>(grid * words);
  Mat phi_m(rows, cols), p_m(rows, cols), m_m(rows, cols);

  std::vector<int> w(static_cast<std::size_t>(window) + 1);
  for (std::int64_t word = 0; word < words; ++word) {
    double weight = 1.0;
    std::int64_t x = word;
    for (auto& s : w) {
      s = static_cast<int>(x % n);
      x /= n;
      weight *= probs[static_cast<std::size_t>(s)];
    }
    for (int g = 0; g < grid; ++g) {
      double u = static_cast<double>(g) / grid;
      double tu = u + g_frac;
      if (tu >= 1.0) tu -= 1.0;
      double sw = std::sqrt(weight / grid);
      Eigen::Index row = word * grid + g;
      Eigen::Index col = 0;
      for (std::int64_t l = -cutoff; l <= cutoff; ++l) {
        for (std::int64_t code = 0; code < patterns; ++code, ++col) {
          double here = 1.0;
          double shifted = 1.0;
          std::int64_t c = code;
          for (int j = 0; j < window; ++j, c /= n) {
            auto d = static_cast<std::size_t>(c % n);
            here *= phi[d][static_cast<std::size_t>(w[static_cast<std::size_t>(j)])];
            shifted *= phi[d][static_cast<std::size_t>(w[static_cast<std::size_t>(j) + 1])];
          }
          cd base = unit(static_cast<double>(l) * u);
          phi_m(row, col) = sw * base * here;
          p_m(row, col) = sw * unit(static_cast<double>(l) * tu) * shifted;
          m_m(row, col) = sw * unit(static_cast<double>(k) * u) * base * here;
        }
      }
    }
  }
  Mat gin = phi_m.adjoint() * phi_m;
  Mat a = p_m.adjoint() * p_m;
  Mat b = m_m.adjoint() * m_m;
  Mat c = p_m.adjoint() * m_m;
  double lam = minimize_block(gin, a, b, c, 128, false).lambda;
  return std::sqrt(std::max(0.0, lam));
}

std::string to_string(QuasiEigenVerdict v) {
  switch (v) {
    case QuasiEigenVerdict::exists:
      return "exists";
    case QuasiEigenVerdict::absent:
      return "absent";
    case QuasiEigenVerdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

ResidualThresholds calibrate_thresholds(const SystemSpec& spec, std::int64_t k, int cutoff) {
  ResidualThresholds t;
  t.r0 = dense_reference_residual(spec, k, 4, 16, cutoff);
  t.reject_at = t.r0 / 2;
  return t;
}

QuasiEigenVerdict classify_residual(double residual, const ResidualThresholds& t) {
  if (residual <= t.accept_at) return QuasiEigenVerdict::exists;
  if (t.reject_at > t.accept_at && residual >= t.reject_at) return QuasiEigenVerdict::absent;
  return QuasiEigenVerdict::inconclusive;
}

}  // namespace ergodesk
