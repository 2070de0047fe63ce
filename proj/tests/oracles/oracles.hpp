#pragma once

// Test-only reference computations. None of these call into the library's
// numerical code; they rebuild each quantity from its definition.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using cd = std::complex<double>;

inline double silver() { return std::sqrt(2.0) - 1.0; }

inline double frac(double x) { return x - std::floor(x); }

/// Dense residual for rotation(gamma) x fair coin, symbols +-1, by direct
/// pointwise evaluation and a plain Hermitian eigen-solve per delta.
///
/// Basis exp(2 pi i l u) prod_{j in S} w_j over |l| <= cutoff, S subset of
/// [0, window). Points: u on a uniform grid of `grid`, all words on [0, window].
inline double dense_residual(double gamma, std::int64_t k, int window, int grid, int cutoff) {
  const int words = 1 << (window + 1);
  const int subsets = 1 << window;
  const int cols = (2 * cutoff + 1) * subsets;
  const int rows = grid * words;
  Eigen::MatrixXcd p(rows, cols), m(rows, cols);
  const double w8 = 1.0 / std::sqrt(static_cast<double>(grid) * words);
  for (int word = 0; word < words; ++word) {
    auto sym = [&](int j) { return (word >> j) & 1 ? 1.0 : -1.0; };
    for (int g = 0; g < grid; ++g) {
      double u = static_cast<double>(g) / grid;
      double tu = frac(u + gamma);
      int col = 0;
      for (int l = -cutoff; l <= cutoff; ++l) {
        for (int s = 0; s < subsets; ++s, ++col) {
          double here = 1, there = 1;
          for (int j = 0; j < window; ++j) {
            if ((s >> j) & 1) {
              here *= sym(j);
              there *= sym(j + 1);
            }
          }
          p(word * grid + g, col) = w8 * std::polar(1.0, 2 * std::numbers::pi * l * tu) * there;
          m(word * grid + g, col) = w8 * std::polar(1.0, 2 * std::numbers::pi * (l + k) * u) * here;
        }
      }
    }
  }
  auto sigma2 = [&](double theta) {
    Eigen::MatrixXcd d = p - std::polar(1.0, theta) * m;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d.adjoint() * d, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
  };
  const int steps = 360;
  double best = 1e300, at = 0;
  for (int i = 0; i < steps; ++i) {
    double th = 2 * std::numbers::pi * i / steps;
    double v = sigma2(th);
    if (v < best) {
      best = v;
      at = th;
    }
  }
  double lo = at - 2 * std::numbers::pi / steps, hi = at + 2 * std::numbers::pi / steps;
  for (int it = 0; it < 80; ++it) {
    double a = lo + (hi - lo) / 3, b = hi - (hi - lo) / 3;
    if (sigma2(a) < sigma2(b)) {
      hi = b;
    } else {
      lo = a;
    }
  }
  best = std::min(best, sigma2((lo + hi) / 2));
  return std::sqrt(std::max(0.0, best));
}

/// Number of atoms of the n-step refinement of the two-cell coding
/// [0, 1/2), [1/2, 1) under rotation by gamma: distinct cut points
/// {0, 1/2} - j gamma mod 1 for j < n.
inline std::size_t rotation_atoms(double gamma, int n) {
  std::set<long long> cuts;
  for (int j = 0; j < n; ++j) {
    for (double c : {0.0, 0.5}) cuts.insert(std::llround(frac(c - j * gamma) * 1e12) % 1000000000000LL);
  }
  return cuts.size();
}

/// |[0, 1/2) + theta mod 1  n  [0, 1/2)|
inline double half_overlap(double theta) {
  theta = frac(theta);
  return 0.5 - std::min(theta, 1.0 - theta);
}

/// Mean over uniform theta of |half_overlap(theta) - 1/4| by the midpoint rule.
inline double half_overlap_deviation_mean(int cells = 1 << 20) {
  double s = 0;
  for (int i = 0; i < cells; ++i) s += std::fabs(half_overlap((i + 0.5) / cells) - 0.25);
  return s / cells;
}

/// Tower for the skew map by closure on a box: level n+1 holds (k, m) iff
/// (m, 0) is in level n. Returns one membership set per level.
inline std::vector<std::set<std::pair<int, int>>> skew_tower_box(int levels, int box) {
  std::vector<std::set<std::pair<int, int>>> out;
  std::set<std::pair<int, int>> cur{{0, 0}};
  out.push_back(cur);
  for (int n = 1; n < levels; ++n) {
    std::set<std::pair<int, int>> next;
    for (int k = -box; k <= box; ++k) {
      for (int m = -box; m <= box; ++m) {
        if (cur.contains({m, 0})) next.insert({k, m});
      }
    }
    for (const auto& x : cur) next.insert(x);
    cur = next;
    out.push_back(cur);
  }
  return out;
}

/// a_{k,m} = exp(2 pi i gamma (2k - m)^2 / (8m)) solves a_{k+m,m} = exp(2 pi i k gamma) a_{k,m}.
inline cd closed_form_chain_phase(double gamma, std::int64_t k, std::int64_t m) {
  double x = static_cast<double>(2 * k - m);
  return std::polar(1.0, 2 * std::numbers::pi * gamma * x * x / (8.0 * static_cast<double>(m)));
}

/// -sum p log p by direct summation.
inline double shannon(const std::vector<double>& p) {
  double h = 0;
  for (double x : p) h -= x * std::log(x);
  return h;
}

}  // namespace oracle
