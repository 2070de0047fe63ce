#include "ergodesk/json_io.hpp"

#include <stdexcept>

namespace ergodesk {

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw std::invalid_argument(std::string("missing field '") + name + "'");
  return j.at(name);
}

json mode_to_json(FourierMode m) { return json::array({m.k, m.m}); }

json label_to_json(const SpectralLabel& l) {
  if (auto* p = std::get_if<PointLabel>(&l)) return {{"point", p->k}};
  const auto& c = std::get<ChainLabel>(l);
  return {{"chain", json::array({c.i, c.j})}};
}

}  // namespace

json gamma_to_json(const RotationNumber& gamma) {
  json j;
  if (gamma.is_exact()) {
    auto t = gamma.quadratic_tuple();
    j["quadratic"] = json::array({t[0], t[1], t[2], t[3]});
  } else {
    j["decimal"] = gamma.digits();
    j["bits"] = gamma.precision_bits();
  }
  j["value"] = gamma.to_decimal_string(64);
  return j;
}

RotationNumber gamma_from_json(const json& j, int default_bits) {
  try {
    if (j.is_string()) {
      if (j.get<std::string>() == "silver") return RotationNumber::silver();
      return RotationNumber::decimal(j.get<std::string>(), default_bits);
    }
    if (j.contains("quadratic")) {
      auto t = j.at("quadratic").get<std::vector<std::int64_t>>();
      if (t.size() != 4) throw std::invalid_argument("quadratic angle needs [p, q, d, r]");
      return RotationNumber::quadratic(t[0], t[1], t[2], t[3]);
    }
    if (j.contains("decimal")) {
      return RotationNumber::decimal(j.at("decimal").get<std::string>(), j.value("bits", default_bits));
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad angle: ") + e.what());
  }
  throw std::invalid_argument("angle needs 'quadratic' or 'decimal'");
}

json bernoulli_to_json(const BernoulliSpec& spec) { return {{"probs", spec.probs}, {"symbols", spec.symbols}}; }

BernoulliSpec bernoulli_from_json(const json& j) {
  try {
    auto probs = field(j, "probs").get<std::vector<double>>();
    std::vector<int> symbols;
    if (j.contains("symbols")) symbols = j.at("symbols").get<std::vector<int>>();
    return BernoulliSpec::make(std::move(probs), std::move(symbols));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad bernoulli spec: ") + e.what());
  }
}

json system_to_json(const SystemSpec& spec) {
  json j{{"kind", to_string(spec.kind())}};
  if (spec.has_gamma()) j["gamma"] = gamma_to_json(spec.gamma());
  if (spec.has_shift()) j["shift"] = bernoulli_to_json(spec.shift());
  return j;
}

SystemSpec system_from_json(const json& j, int default_bits) {
  if (!j.is_object()) throw std::invalid_argument("system spec must be an object");
  SystemKind kind;
  try {
    kind = system_kind_from_string(field(j, "kind").get<std::string>());
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad system kind: ") + e.what());
  }
  auto gamma = [&] { return j.contains("gamma") ? gamma_from_json(j.at("gamma"), default_bits) : RotationNumber::silver(); };
  auto shift = [&] { return bernoulli_from_json(j.contains("shift") ? j.at("shift") : j); };
  switch (kind) {
    case SystemKind::rotation:
      return SystemSpec::rotation(gamma());
    case SystemKind::skew:
      return SystemSpec::skew(gamma());
    case SystemKind::bernoulli:
      return SystemSpec::bernoulli(shift());
    case SystemKind::product:
      return SystemSpec::product(gamma(), shift());
  }
  throw std::invalid_argument("bad system kind");
}

json cylinder_to_json(const CylinderSet& c) {
  json a = json::array();
  for (const auto& k : c.constraints) a.push_back(json::array({k.position, k.symbol}));
  return a;
}

CylinderSet cylinder_from_json(const json& j) {
  CylinderSet c;
  try {
    for (const auto& k : j) c.constraints.push_back({k.at(0).get<std::int64_t>(), k.at(1).get<int>()});
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad cylinder: ") + e.what());
  }
  return c;
}

json test_set_to_json(const TestSet& s) {
  return std::visit(
      [](const auto& t) -> json {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, UInterval>) {
          return {{"type", "u-interval"}, {"u", {t.a, t.b}}};
        } else if constexpr (std::is_same_v<T, TorusRect>) {
          return {{"type", "torus-rectangle"}, {"u", {t.a, t.b}}, {"v", {t.c, t.d}}};
        } else if constexpr (std::is_same_v<T, CylinderTest>) {
          return {{"type", "cylinder"}, {"cylinder", cylinder_to_json(t.cylinder)}};
        } else {
          return {{"type", "product"}, {"u", {t.interval.a, t.interval.b}}, {"cylinder", cylinder_to_json(t.cylinder)}};
        }
      },
      s);
}

TestSet test_set_from_json(const json& j) {
  try {
    auto type = field(j, "type").get<std::string>();
    auto pair = [&](const char* name) { return field(j, name).get<std::array<double, 2>>(); };
    if (type == "u-interval") {
      auto u = pair("u");
      return UInterval{u[0], u[1]};
    }
    if (type == "torus-rectangle") {
      auto u = pair("u");
      auto v = pair("v");
      return TorusRect{u[0], u[1], v[0], v[1]};
    }
    if (type == "cylinder") return CylinderTest{cylinder_from_json(field(j, "cylinder"))};
    if (type == "product") {
      auto u = pair("u");
      return ProductTest{{u[0], u[1]}, cylinder_from_json(field(j, "cylinder"))};
    }
    throw std::invalid_argument("unknown test set type '" + type + "'");
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad test set: ") + e.what());
  }
}

json descriptor_to_json(const SpectrumDescriptor& d) {
  json gens = json::array();
  for (const auto& g : d.generators) gens.push_back({{"gamma", gamma_to_json(g.gamma)}, {"simple", g.simple}});
  json leb = d.lebesgue.infinite ? json("countable") : json(d.lebesgue.count);
  return {{"point_generators", gens},
          {"unit_multiplicity", d.unit_multiplicity},
          {"lebesgue_multiplicity", leb},
          {"tag", to_string(d.tag)}};
}

json lattice_to_json(const CharacterLattice& l) {
  json g = json::array();
  for (const auto& m : l.generators()) g.push_back(mode_to_json(m));
  return {{"generators", g}, {"row_generator", l.row_generator()}, {"description", l.describe()}};
}

json level_to_json(const TowerLevel& l) {
  json j = lattice_to_json(l.characters);
  j["depth"] = l.depth;
  j["with_constants"] = l.with_constants;
  return j;
}

json residual_to_json(const ResidualReport& r) {
  return {{"k", r.k},
          {"window", r.window},
          {"grid", r.grid},
          {"cutoff", r.cutoff},
          {"residual", r.residual},
          {"delta_turns", r.delta_turns},
          {"profile", r.profile},
          {"basis_size", r.basis_size},
          {"components", r.components},
          {"minimizer", r.minimizer}};
}

json thresholds_to_json(const ResidualThresholds& t) {
  return {{"r0", t.r0}, {"reject_at", t.reject_at}, {"accept_at", t.accept_at}};
}

json tower_evidence_to_json(const TowerEvidence& e) {
  json levels = json::array();
  for (const auto& l : e.levels) levels.push_back(level_to_json(l));
  json res = json::array();
  for (std::size_t i = 0; i < e.residuals.size(); ++i) {
    json r = residual_to_json(e.residuals[i]);
    r["thresholds"] = thresholds_to_json(e.thresholds[i]);
    r["verdict"] = to_string(classify_residual(e.residuals[i].residual, e.thresholds[i]));
    res.push_back(r);
  }
  return {{"system", e.system},
          {"provenance", to_string(e.provenance)},
          {"second_equals_third", e.stable},
          {"levels", levels},
          {"residuals", res}};
}

json entropy_to_json(const EntropyEstimate& e) {
  return {{"value_nats", e.value},
          {"block_length", e.block_length},
          {"samples", e.samples},
          {"stderr", e.standard_error},
          {"exact", e.exact}};
}

json intertwiner_to_json(const IntertwinerPairing& p, const IntertwinerCheck& c) {
  json pairs = json::array();
  std::size_t shown = 0;
  for (const auto& [x, y] : p.pairs) {
    if (shown++ == 8) break;
    pairs.push_back(json::array({label_to_json(x), label_to_json(y)}));
  }
  return {{"truncation", p.truncation},
          {"relation", {{"sign", p.relation.sign}, {"shift", p.relation.shift}}},
          {"pair_count", p.pairs.size()},
          {"first_pairs", pairs},
          {"checked", c.checked},
          {"mismatches", c.mismatches},
          {"max_residual", c.max_residual}};
}

json comparison_to_json(const GroupComparison& g) {
  json j{{"equal", g.equal}, {"bound", g.bound}};
  j["forward"] = g.forward ? json(*g.forward) : json(nullptr);
  j["backward"] = g.backward ? json(*g.backward) : json(nullptr);
  j["relation"] = g.relation ? json{{"sign", g.relation->sign}, {"shift", g.relation->shift}} : json(nullptr);
  return j;
}

json correlation_to_json(const CorrelationPoint& c) {
  return {{"i", c.i}, {"value", c.value}, {"exact", c.exact}, {"stderr", c.standard_error}};
}

json mixing_to_json(const MixingStatistic& s) {
  return {{"t", s.t}, {"value", s.value}, {"exact", s.exact}, {"stderr", s.standard_error}};
}

}  // namespace ergodesk
