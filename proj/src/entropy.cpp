#include "ergodesk/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace ergodesk {

namespace {

struct Arc {
  double lo, hi;
};

std::vector<Arc> arc_pieces(double a, double b, long double shift) {
  double lo = static_cast<double>(std::fmod(static_cast<long double>(a) + shift, 1.0L));
  if (lo < 0) lo += 1.0;
  double hi = lo + (b - a);
  if (hi <= 1.0) return {{lo, hi}};
  return {{lo, 1.0}, {0.0, hi - 1.0}};
}

std::vector<Arc> intersect(const std::vector<Arc>& x, const std::vector<Arc>& y) {
  std::vector<Arc> out;
  for (const auto& p : x) {
    for (const auto& q : y) {
      double lo = std::max(p.lo, q.lo);
      double hi = std::min(p.hi, q.hi);
      if (hi > lo) out.push_back({lo, hi});
    }
  }
  return out;
}

bool cylinders_conflict(const CylinderSet& x, const CylinderSet& y) {
  for (const auto& c : x.constraints) {
    for (const auto& d : y.constraints) {
      if (c.position == d.position && c.symbol != d.symbol) return true;
    }
  }
  return false;
}

bool window_in(const SymbolWindow& w, const CylinderSet& c) {
  for (const auto& k : c.constraints) {
    if (w.at(k.position) != k.symbol) return false;
  }
  return true;
}

double point_u(const SystemPoint& x) {
  if (auto* p = std::get_if<CirclePoint>(&x)) return p->u;
  if (auto* p = std::get_if<TorusPoint>(&x)) return p->u;
  if (auto* p = std::get_if<ProductPoint>(&x)) return p->u;
  return 0.0;
}

const SymbolWindow* point_window(const SystemPoint& x) {
  if (auto* p = std::get_if<SymbolWindow>(&x)) return p;
  if (auto* p = std::get_if<ProductPoint>(&x)) return &p->w;
  return nullptr;
}

// Coordinates touched by the partition's cylinders.
std::pair<std::int64_t, std::int64_t> cylinder_span(const PartitionSpec& alpha) {
  std::int64_t lo = 0, hi = 0;
  for (const auto& c : alpha.cells) {
    for (const auto& k : c.cylinder.constraints) {
      lo = std::min(lo, k.position);
      hi = std::max(hi, k.position);
    }
  }
  return {lo, hi};
}

std::size_t distinct_cells(const PartitionSpec& alpha) { return std::max<std::size_t>(alpha.cells.size(), 2); }

}  // namespace

PartitionSpec PartitionSpec::time_zero(const BernoulliSpec& spec) {
  PartitionSpec p;
  for (int s : spec.symbols) {
    PartitionCell c;
    c.label = "w0=" + std::to_string(s);
    c.cylinder.constraints.push_back({0, s});
    p.cells.push_back(std::move(c));
  }
  return p;
}

PartitionSpec PartitionSpec::intervals(const std::vector<double>& cuts) {
  PartitionSpec p;
  std::vector<double> pts{0.0};
  for (double c : cuts) {
    if (c > 0.0 && c < 1.0) pts.push_back(c);
  }
  pts.push_back(1.0);
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    PartitionCell c;
    c.a = pts[i];
    c.b = pts[i + 1];
    c.label = "[" + std::to_string(c.a) + "," + std::to_string(c.b) + ")";
    p.cells.push_back(std::move(c));
  }
  return p;
}

PartitionSpec PartitionSpec::whole() {
  PartitionSpec p;
  PartitionCell c;
  c.label = "whole";
  p.cells.push_back(std::move(c));
  return p;
}

void PartitionSpec::validate(const SystemSpec& spec) const {
  if (cells.empty()) throw std::invalid_argument("partition has no cells");
  bool has_u = spec.kind() != SystemKind::bernoulli;
  bool has_w = spec.has_shift();
  long double total = 0;
  for (const auto& c : cells) {
    if (!(c.a >= 0.0 && c.a < c.b && c.b <= 1.0)) throw std::invalid_argument("partition cell " + c.label + ": bad interval");
    if (!has_u && !c.full_interval()) throw std::invalid_argument("partition cell " + c.label + " constrains u");
    if (!has_w && !c.cylinder.constraints.empty()) {
      throw std::invalid_argument("partition cell " + c.label + " constrains symbols");
    }
    double m = c.b - c.a;
    if (has_w) m *= cylinder_measure(spec.shift(), c.cylinder);
    total += m;
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      bool u_apart = cells[i].b <= cells[j].a || cells[j].b <= cells[i].a;
      if (!u_apart && !cylinders_conflict(cells[i].cylinder, cells[j].cylinder)) {
        throw std::invalid_argument("partition cells " + cells[i].label + " and " + cells[j].label + " overlap");
      }
    }
  }
  if (std::fabs(static_cast<double>(total - 1.0L)) > 1e-12) {
    throw std::invalid_argument("partition cells do not cover the space");
  }
}

std::size_t PartitionSpec::cell_of(const SystemPoint& x) const {
  double u = point_u(x);
  const SymbolWindow* w = point_window(x);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    if (u < c.a || u >= c.b) continue;
    if (!c.cylinder.constraints.empty() && (w == nullptr || !window_in(*w, c.cylinder))) continue;
    return i;
  }
  throw std::invalid_argument("point lies in no partition cell");
}

std::string PartitionSpec::describe() const {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += "|";
    s += cells[i].label;
  }
  return s;
}

double bernoulli_entropy(const BernoulliSpec& spec) {
  spec.validate();
  double h = 0;
  for (double p : spec.probs) h -= p * std::log(p);
  return h;
}

EntropyEstimate analytic_block_entropy(const BernoulliSpec& spec, int n) {
  spec.validate();
  if (n < 1) throw std::invalid_argument("block length must be at least 1");
  double count = std::pow(static_cast<double>(spec.size()), n);
  if (count > static_cast<double>(1 << 24)) throw std::invalid_argument("too many blocks to enumerate");
  auto blocks = static_cast<std::uint64_t>(count);
  long double h = 0;
  std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    long double p = 1;
    for (auto d : digits) p *= spec.probs[d];
    h -= p * std::log(p);
    for (auto& d : digits) {
      if (++d < spec.size()) break;
      d = 0;
    }
  }
  EntropyEstimate e;
  e.value = static_cast<double>(h / n);
  e.block_length = n;
  e.samples = blocks;
  e.exact = true;
  return e;
}

EntropyEstimate block_entropy_rate(const std::vector<int>& stream, int n) {
  if (n < 1) throw std::invalid_argument("block length must be at least 1");
  std::map<int, int> alphabet;
  for (int s : stream) alphabet.emplace(s, 0);
  double cells = static_cast<double>(std::max<std::size_t>(alphabet.size(), 2));
  double needed = 100.0 * std::pow(cells, n);
  if (static_cast<double>(stream.size()) < needed) {
    throw UndersampledError("stream of length " + std::to_string(stream.size()) + " is too short for blocks of length " +
                            std::to_string(n) + " (needs " + std::to_string(static_cast<std::uint64_t>(needed)) + ")");
  }
  int code = 0;
  for (auto& [s, c] : alphabet) c = code++;
  std::unordered_map<std::uint64_t, std::uint64_t> freq;
  std::uint64_t base = alphabet.size();
  std::uint64_t windows = stream.size() - static_cast<std::size_t>(n) + 1;
  for (std::uint64_t i = 0; i < windows; ++i) {
    std::uint64_t key = 0;
    for (int j = 0; j < n; ++j) key = key * base + static_cast<std::uint64_t>(alphabet[stream[i + static_cast<std::size_t>(j)]]);
    ++freq[key];
  }
  // Iterate in key order so the floating sum does not depend on hashing.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> sorted(freq.begin(), freq.end());
  std::sort(sorted.begin(), sorted.end());
  long double h = 0, h2 = 0;
  for (const auto& [key, c] : sorted) {
    long double f = static_cast<long double>(c) / windows;
    h -= f * std::log(f);
    h2 += f * std::log(f) * std::log(f);
  }
  long double var = std::max(0.0L, h2 - h * h);
  long double bias = static_cast<long double>(sorted.size() - 1) / (2.0L * windows);
  EntropyEstimate e;
  e.value = static_cast<double>(h / n);
  e.block_length = n;
  e.samples = windows;
  e.standard_error = static_cast<double>(std::sqrt(var / windows + bias * bias) / n);
  return e;
}

std::vector<int> coded_trajectory(const SystemSpec& spec, const PartitionSpec& alpha, std::size_t length, Rng& rng) {
  alpha.validate(spec);
  auto [lo, hi] = cylinder_span(alpha);
  auto half = static_cast<std::int64_t>(length) + std::max(-lo, hi) + 1;
  SystemPoint x = sample_point(spec, rng, spec.has_shift() ? half : 0);
  std::vector<int> out;
  out.reserve(length);
  for (std::size_t j = 0; j < length; ++j) {
    out.push_back(static_cast<int>(alpha.cell_of(x)));
    advance(spec, x);
  }
  return out;
}

EntropyEstimate partition_refine_entropy(const SystemSpec& spec, const PartitionSpec& alpha, int n,
                                         std::uint64_t samples, Rng& rng) {
  alpha.validate(spec);
  if (n < 1) throw std::invalid_argument("block length must be at least 1");
  if (samples < 100 * distinct_cells(alpha)) {
    throw UndersampledError(std::to_string(samples) + " samples is too few for " + std::to_string(alpha.cells.size()) +
                            " cells");
  }
  auto [lo, hi] = cylinder_span(alpha);
  std::int64_t half = std::max(-lo, hi + n) + 1;
  bool has_u = spec.has_gamma();
  std::vector<long double> shifts(static_cast<std::size_t>(n), 0.0L);
  if (has_u) {
    for (int j = 0; j < n; ++j) shifts[static_cast<std::size_t>(j)] = -spec.gamma().multiple_mod1(j);
  }
  long double sum = 0, sum2 = 0;
  std::vector<std::size_t> itinerary(static_cast<std::size_t>(n));
  for (std::uint64_t s = 0; s < samples; ++s) {
    SystemPoint x = sample_point(spec, rng, spec.has_shift() ? half : 0);
    for (int j = 0; j < n; ++j) {
      itinerary[static_cast<std::size_t>(j)] = alpha.cell_of(x);
      if (j + 1 < n) advance(spec, x);
    }
    long double mu = 1.0L;
    if (has_u) {
      std::vector<Arc> atom{{0.0, 1.0}};
      for (int j = 0; j < n; ++j) {
        const auto& c = alpha.cells[itinerary[static_cast<std::size_t>(j)]];
        if (c.full_interval()) continue;
        atom = intersect(atom, arc_pieces(c.a, c.b, shifts[static_cast<std::size_t>(j)]));
      }
      long double len = 0;
      for (const auto& a : atom) len += a.hi - a.lo;
      mu *= len;
    }
    if (spec.has_shift()) {
      std::map<std::int64_t, int> fixed;
      for (int j = 0; j < n; ++j) {
        for (const auto& k : alpha.cells[itinerary[static_cast<std::size_t>(j)]].cylinder.constraints) {
          fixed.emplace(k.position + j, k.symbol);
        }
      }
      for (const auto& [pos, sym] : fixed) mu *= spec.shift().prob_of(sym);
    }
    long double info = -std::log(std::max(mu, 1e-300L)) / n;
    sum += info;
    sum2 += info * info;
  }
  long double mean = sum / samples;
  long double var = std::max(0.0L, sum2 / samples - mean * mean);
  EntropyEstimate e;
  e.value = static_cast<double>(mean);
  e.block_length = n;
  e.samples = samples;
  e.standard_error = static_cast<double>(std::sqrt(var / samples));
  return e;
}

EntropyVerdict entropy_classifier(const BernoulliSpec& a, const BernoulliSpec& b, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("entropy tolerance must be positive");
  EntropyVerdict v;
  v.entropy_a = bernoulli_entropy(a);
  v.entropy_b = bernoulli_entropy(b);
  v.spacially_isomorphic = std::fabs(v.entropy_a - v.entropy_b) <= tol;
  v.spacial = v.spacially_isomorphic ? "spacially isomorphic (Ornstein)" : "not spacially isomorphic (entropy invariant)";
  v.spectral = "spectrally isomorphic (both Lebesgue systems)";
  return v;
}

}  // namespace ergodesk
