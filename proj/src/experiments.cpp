#include "ergodesk/experiments.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

namespace ergodesk {

namespace {

const std::set<std::string> kScenarios = {"reproduce-letter", "reproduce-kolmogorov", "theorem1", "compute"};

const char* kCharacterNote =
    "tower levels hold constants times characters (cylinder characters for rotation x shift); "
    "that every generalized proper function of these systems has this form is an assumption of the representation";

json table(std::vector<std::string> header) { return {{"header", std::move(header)}, {"rows", json::array()}}; }

void add_row(ExperimentReport& r, const std::string& name, const std::vector<std::string>& header, json row) {
  json& tables = r.steps["tables"];
  if (!tables.contains(name)) tables[name] = table(header);
  tables[name]["rows"].push_back(std::move(row));
}

const std::vector<std::string> kTowerHeader = {"system", "depth", "generators", "provenance"};
const std::vector<std::string> kResidualHeader = {"system", "k", "N", "grid", "cutoff", "residual",
                                                  "r0", "reject_at", "accept_at", "verdict"};
const std::vector<std::string> kMixingHeader = {"system", "A", "B", "i", "value", "stderr", "mode"};
const std::vector<std::string> kMixingStatHeader = {"system", "A", "B", "t", "value", "stderr", "mode"};

std::vector<std::string> entropy_header(bool bits) {
  return {"system", "partition", "n", "samples", bits ? "estimate_bits" : "estimate_nats", "stderr", "exact"};
}

void add_entropy_row(ExperimentReport& r, const ExperimentConfig& c, const std::string& system,
                     const std::string& partition, const EntropyEstimate& e) {
  double scale = c.bits ? 1.0 / std::numbers::ln2 : 1.0;
  add_row(r, "entropy", entropy_header(c.bits),
          {system, partition, e.block_length, e.samples, e.value * scale, e.standard_error * scale, e.exact});
}

void add_tower_rows(ExperimentReport& r, const TowerEvidence& e) {
  for (const auto& l : e.levels) {
    add_row(r, "tower", kTowerHeader, {e.system, l.depth, l.characters.describe(), to_string(e.provenance)});
  }
  for (std::size_t i = 0; i < e.residuals.size(); ++i) {
    const auto& x = e.residuals[i];
    const auto& t = e.thresholds[i];
    add_row(r, "residuals", kResidualHeader,
            {e.system, x.k, x.window, x.grid, x.cutoff, x.residual, t.r0, t.reject_at, t.accept_at,
             to_string(classify_residual(x.residual, t))});
  }
}

ExperimentReport start(const ExperimentConfig& c, const std::string& scenario) {
  c.validate();
  ExperimentReport r;
  r.scenario = scenario;
  r.seed = c.seed;
  r.inputs = config_to_json(c);
  r.steps["tables"] = json::object();
  return r;
}

std::vector<SystemSpec> systems_or(const ExperimentConfig& c, std::vector<SystemSpec> defaults, std::size_t need) {
  auto s = c.resolved_systems();
  if (s.empty()) s = std::move(defaults);
  if (s.size() < need) {
    throw std::invalid_argument("scenario " + c.scenario + " needs " + std::to_string(need) + " systems");
  }
  return s;
}

TowerOptions tower_options(const ExperimentConfig& c) {
  TowerOptions o;
  o.ks = c.ks;
  o.windows = {c.window};
  return o;
}

double circle_distance(double x, double y) {
  double d = std::fabs(x - y);
  d -= std::floor(d);
  return std::min(d, 1.0 - d);
}

std::int64_t param_int(const ExperimentConfig& c, const char* name, std::int64_t fallback) {
  return c.params.contains(name) ? c.params.at(name).get<std::int64_t>() : fallback;
}

CorrelationMode param_mode(const ExperimentConfig& c) {
  std::string mode = c.params.value("mode", std::string("exact"));
  if (mode == "exact") return CorrelationMode::closed_form();
  if (mode == "monte-carlo") return CorrelationMode::monte_carlo(c.samples, c.seed);
  throw std::invalid_argument("unknown correlation mode '" + mode + "'");
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!kScenarios.contains(scenario)) throw std::invalid_argument("unknown scenario '" + scenario + "'");
  if (truncation < 1) throw std::invalid_argument("truncation must be positive");
  if (window < 2) throw std::invalid_argument("window must be at least 2");
  if (samples < 1) throw std::invalid_argument("samples must be positive");
  if (block_length < 1) throw std::invalid_argument("block length must be positive");
  if (precision_bits < 2) throw std::invalid_argument("precision bits must be at least 2");
  if (!(tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
  if (ks.empty()) throw std::invalid_argument("ks must not be empty");
}

std::vector<SystemSpec> ExperimentConfig::resolved_systems() const {
  std::vector<SystemSpec> out;
  for (const auto& j : systems) out.push_back(system_from_json(j, precision_bits));
  return out;
}

json config_to_json(const ExperimentConfig& c) {
  return {{"scenario", c.scenario},         {"systems", c.systems},
          {"truncation", c.truncation},     {"window", c.window},
          {"ks", c.ks},                     {"samples", c.samples},
          {"block_length", c.block_length}, {"seed", c.seed},
          {"precision_bits", c.precision_bits}, {"bits", c.bits},
          {"tolerance", c.tolerance},       {"params", c.params}};
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  static const std::set<std::string> known = {"scenario", "systems",        "truncation", "window",
                                              "ks",       "samples",        "block_length", "seed",
                                              "precision_bits", "bits",     "tolerance",  "params"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw std::invalid_argument("unknown config field '" + key + "'");
  }
  ExperimentConfig c;
  try {
    c.scenario = j.value("scenario", c.scenario);
    if (j.contains("systems")) c.systems = j.at("systems").get<std::vector<json>>();
    c.truncation = j.value("truncation", c.truncation);
    c.window = j.value("window", c.window);
    if (j.contains("ks")) c.ks = j.at("ks").get<std::vector<std::int64_t>>();
    c.samples = j.value("samples", c.samples);
    c.block_length = j.value("block_length", c.block_length);
    c.seed = j.value("seed", c.seed);
    c.precision_bits = j.value("precision_bits", c.precision_bits);
    c.bits = j.value("bits", c.bits);
    c.tolerance = j.value("tolerance", c.tolerance);
    if (j.contains("params")) c.params = j.at("params");
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad config: ") + e.what());
  }
  c.validate();
  c.resolved_systems();
  return c;
}

json report_to_json(const ExperimentReport& r) {
  json verdicts = json::array();
  for (const auto& v : r.verdicts) {
    verdicts.push_back({{"name", v.name}, {"value", v.value}, {"provenance", v.provenance}, {"evidence", v.evidence}});
  }
  return {{"scenario", r.scenario}, {"version", r.version}, {"seed", r.seed},     {"inputs", r.inputs},
          {"steps", r.steps},       {"verdicts", verdicts}, {"status", r.status}, {"notes", r.notes}};
}

ExperimentReport report_from_json(const json& j) {
  ExperimentReport r;
  try {
    r.scenario = j.at("scenario").get<std::string>();
    r.version = j.at("version").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.inputs = j.at("inputs");
    r.steps = j.at("steps");
    for (const auto& v : j.at("verdicts")) {
      r.verdicts.push_back({v.at("name").get<std::string>(), v.at("value").get<std::string>(),
                            v.at("provenance").get<std::string>(), v.at("evidence")});
    }
    r.status = j.at("status").get<std::string>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad report: ") + e.what());
  }
  return r;
}

ExperimentReport run_reproduce_letter(const ExperimentConfig& config) {
  ExperimentReport r = start(config, "reproduce-letter");
  auto sys = systems_or(
      config, {SystemSpec::skew(RotationNumber::silver()), SystemSpec::product(RotationNumber::silver(), BernoulliSpec::fair_coin())},
      2);
  const SystemSpec& a = sys[0];
  const SystemSpec& b = sys[1];
  r.notes.push_back(kCharacterNote);

  SpectrumDescriptor da = spectrum_of(a);
  SpectrumDescriptor db = spectrum_of(b);
  bool same = same_spectrum(da, db);
  r.steps["spectrum"] = {{"a", descriptor_to_json(da)}, {"b", descriptor_to_json(db)}, {"same", same}};

  IntertwinerPairing pairing = build_intertwiner(a, b, config.truncation);
  IntertwinerCheck check = verify_intertwiner(pairing);
  json iw = intertwiner_to_json(pairing, check);
  r.steps["intertwiner"] = iw;
  bool spectral = same && check.mismatches == 0;
  r.verdicts.push_back({"spectral", spectral ? "spectrally isomorphic" : "spectral isomorphism not certified", "exact",
                        {{"descriptors_match", same}, {"intertwiner", iw}}});

  TowerVerdict tv{false, {}, {}};
  try {
    tv = towers_distinguish(a, b, tower_options(config));
  } catch (const InconclusiveError& e) {
    r.status = "inconclusive";
    r.steps["towers"] = {{"error", e.what()}};
    throw ScenarioInconclusive(e.what(), r);
  }
  r.steps["towers"] = {{"a", tower_evidence_to_json(tv.a)},
                       {"b", tower_evidence_to_json(tv.b)},
                       {"distinguished", tv.distinguished}};
  add_tower_rows(r, tv.a);
  add_tower_rows(r, tv.b);
  for (const auto* e : {&tv.a, &tv.b}) {
    r.verdicts.push_back({"tower " + e->system, e->stable ? "1'' = 1'''" : "1'' != 1'''", to_string(e->provenance),
                          tower_evidence_to_json(*e)});
  }
  std::string final_value;
  if (!spectral) {
    final_value = "spectral isomorphism not certified";
  } else if (tv.distinguished) {
    final_value = "spectrally isomorphic, not spacially isomorphic";
  } else {
    final_value = "not distinguished by tower";
  }
  std::string prov = (tv.a.provenance == TowerProvenance::residual_certified ||
                      tv.b.provenance == TowerProvenance::residual_certified)
                         ? "residual-certified"
                         : "exact";
  r.verdicts.push_back({"final", final_value, prov,
                        {{"spectral", spectral}, {"tower_distinguished", tv.distinguished}}});
  return r;
}

ExperimentReport run_reproduce_kolmogorov(const ExperimentConfig& config) {
  ExperimentReport r = start(config, "reproduce-kolmogorov");
  auto sys = systems_or(config,
                        {SystemSpec::bernoulli(BernoulliSpec::fair_coin()),
                         SystemSpec::bernoulli(BernoulliSpec::make({0.25, 0.25, 0.25, 0.25}))},
                        2);
  for (const auto& s : sys) {
    if (s.kind() != SystemKind::bernoulli) throw std::invalid_argument("kolmogorov scenario takes Bernoulli shifts");
  }
  double scale = config.bits ? 1.0 / std::numbers::ln2 : 1.0;
  json per = json::array();
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const auto& spec = sys[i].shift();
    std::string name = sys[i].name();
    PartitionSpec alpha = PartitionSpec::time_zero(spec);
    json entry{{"system", system_to_json(sys[i])}, {"unit", config.bits ? "bits" : "nats"}};
    double h = bernoulli_entropy(spec);
    entry["entropy"] = h * scale;
    EntropyEstimate exact;
    exact.value = h;
    exact.block_length = 1;
    exact.exact = true;
    add_entropy_row(r, config, name, "formula", exact);
    try {
      EntropyEstimate blocks = analytic_block_entropy(spec, config.block_length);
      entry["analytic_block"] = entropy_to_json(blocks);
      add_entropy_row(r, config, name, alpha.describe(), blocks);
    } catch (const std::invalid_argument& e) {
      entry["analytic_block"] = {{"skipped", e.what()}};
    }
    Rng rng = Rng::substream(config.seed, 2 * i);
    try {
      EntropyEstimate mc = partition_refine_entropy(sys[i], alpha, config.block_length, config.samples, rng);
      entry["sampled"] = entropy_to_json(mc);
      add_entropy_row(r, config, name, alpha.describe(), mc);
    } catch (const UndersampledError& e) {
      entry["sampled"] = {{"undersampled", e.what()}};
    }
    Rng traj_rng = Rng::substream(config.seed, 2 * i + 1);
    auto stream = coded_trajectory(sys[i], alpha, config.samples, traj_rng);
    int n = 0;
    while (n < config.block_length &&
           100.0 * std::pow(static_cast<double>(spec.size()), n + 1) <= static_cast<double>(stream.size())) {
      ++n;
    }
    try {
      EntropyEstimate traj = block_entropy_rate(stream, std::max(n, 1));
      entry["trajectory"] = entropy_to_json(traj);
      add_entropy_row(r, config, name, "trajectory " + alpha.describe(), traj);
    } catch (const UndersampledError& e) {
      entry["trajectory"] = {{"undersampled", e.what()}};
    }
    per.push_back(entry);
  }
  r.steps["systems"] = per;

  json pairs = json::array();
  for (std::size_t i = 0; i < sys.size(); ++i) {
    for (std::size_t j = i + 1; j < sys.size(); ++j) {
      EntropyVerdict ev = entropy_classifier(sys[i].shift(), sys[j].shift(), config.tolerance);
      bool same = same_spectrum(spectrum_of(sys[i]), spectrum_of(sys[j]));
      IntertwinerPairing p = build_intertwiner(sys[i], sys[j], config.truncation);
      IntertwinerCheck chk = verify_intertwiner(p);
      json evidence{{"entropy_a", ev.entropy_a * scale},
                    {"entropy_b", ev.entropy_b * scale},
                    {"descriptors_match", same},
                    {"intertwiner", intertwiner_to_json(p, chk)}};
      pairs.push_back({{"a", i}, {"b", j}, {"spacial", ev.spacial}, {"spectral", ev.spectral}, {"evidence", evidence}});
      std::string tag = std::to_string(i) + "-" + std::to_string(j);
      r.verdicts.push_back({"spacial " + tag, ev.spacial, "exact", evidence});
      r.verdicts.push_back({"spectral " + tag,
                            same && chk.mismatches == 0 ? ev.spectral : "spectral isomorphism not certified", "exact",
                            evidence});
    }
  }
  r.steps["pairs"] = pairs;
  return r;
}

ExperimentReport run_theorem1_check(const ExperimentConfig& config) {
  ExperimentReport r = start(config, "theorem1");
  auto sys = systems_or(config,
                        {SystemSpec::rotation(RotationNumber::silver()),
                         SystemSpec::rotation(RotationNumber::quadratic(2, -1, 2, 1))},
                        2);
  const SystemSpec& a = sys[0];
  const SystemSpec& b = sys[1];
  if (a.kind() != SystemKind::rotation || b.kind() != SystemKind::rotation) {
    throw std::invalid_argument("theorem1 scenario takes two rotations");
  }
  if (!a.gamma().is_exact() || !b.gamma().is_exact()) {
    throw std::domain_error("theorem1 scenario refuses non-exact angles");
  }
  GroupComparison g = point_spectrum_groups_equal(a.gamma(), b.gamma(), 64);
  r.steps["groups"] = comparison_to_json(g);
  if (!g.equal || !g.relation) {
    r.verdicts.push_back({"isomorphism", "not spectrally (hence not spacially) isomorphic", "exact",
                          comparison_to_json(g)});
    return r;
  }
  r.verdicts.push_back({"spectral", "spectrally isomorphic", "exact", comparison_to_json(g)});
  int sign = g.relation->sign;
  Rng rng(config.seed);
  double worst = 0;
  const int points = 10000;
  for (int n = 0; n < points; ++n) {
    double u = rng.uniform();
    auto c = [&](double x) {
      double y = sign < 0 ? -x : x;
      return y - std::floor(y);
    };
    double lhs = c(rotation_step(u, a.gamma()));
    double rhs = rotation_step(c(u), b.gamma());
    worst = std::max(worst, circle_distance(lhs, rhs));
  }
  json conj{{"map", sign < 0 ? "u -> -u mod 1" : "u -> u"}, {"points", points}, {"max_residual", worst},
            {"tolerance", 1e-12}};
  r.steps["conjugacy"] = conj;
  r.verdicts.push_back({"spacial",
                        worst <= 1e-12 ? "spacially isomorphic (conjugacy verified)" : "conjugacy check failed",
                        "monte-carlo", conj});
  return r;
}

ExperimentReport run_compute(const std::string& op, const ExperimentConfig& config) {
  ExperimentReport r = start(config, "compute " + op);
  auto sys = config.resolved_systems();
  auto need = [&](std::size_t n) {
    if (sys.size() < n) throw std::invalid_argument("compute " + op + " needs " + std::to_string(n) + " systems");
  };
  if (op == "spectrum") {
    need(1);
    json all = json::array();
    for (const auto& s : sys) all.push_back(descriptor_to_json(spectrum_of(s)));
    r.steps["spectrum"] = all;
  } else if (op == "tower") {
    need(1);
    TowerEvidence e;
    try {
      e = tower_evidence(sys[0], tower_options(config));
    } catch (const InconclusiveError& ex) {
      r.status = "inconclusive";
      r.steps["tower"] = {{"error", ex.what()}};
      throw ScenarioInconclusive(ex.what(), r);
    }
    r.steps["tower"] = tower_evidence_to_json(e);
    add_tower_rows(r, e);
    r.notes.push_back(kCharacterNote);
    r.verdicts.push_back({"tower", e.stable ? "1'' = 1'''" : "1'' != 1'''", to_string(e.provenance),
                          tower_evidence_to_json(e)});
  } else if (op == "residual") {
    need(1);
    ResidualOptions o;
    o.window = config.window;
    o.grid = static_cast<int>(param_int(config, "grid", 0));
    o.cutoff = static_cast<int>(param_int(config, "cutoff", 2));
    json all = json::array();
    for (std::int64_t k : config.ks) {
      ResidualReport rep = quasi_eigen_residual_search(sys[0], k, o);
      json x = residual_to_json(rep);
      if (sys[0].kind() == SystemKind::product) {
        ResidualThresholds t = calibrate_thresholds(sys[0], k, o.cutoff);
        x["thresholds"] = thresholds_to_json(t);
        x["verdict"] = to_string(classify_residual(rep.residual, t));
        add_row(r, "residuals", kResidualHeader,
                {sys[0].name(), rep.k, rep.window, rep.grid, rep.cutoff, rep.residual, t.r0, t.reject_at, t.accept_at,
                 to_string(classify_residual(rep.residual, t))});
      }
      all.push_back(x);
    }
    r.steps["residuals"] = all;
  } else if (op == "intertwiner") {
    need(2);
    IntertwinerPairing p = build_intertwiner(sys[0], sys[1], config.truncation);
    r.steps["intertwiner"] = intertwiner_to_json(p, verify_intertwiner(p));
  } else if (op == "groups") {
    need(2);
    r.steps["groups"] =
        comparison_to_json(point_spectrum_groups_equal(sys[0].gamma(), sys[1].gamma(), param_int(config, "bound", 64)));
  } else if (op == "entropy") {
    need(1);
    json all = json::array();
    for (std::size_t i = 0; i < sys.size(); ++i) {
      PartitionSpec alpha = sys[i].has_shift() ? PartitionSpec::time_zero(sys[i].shift())
                                               : PartitionSpec::intervals({0.5});
      Rng rng = Rng::substream(config.seed, i);
      EntropyEstimate e = partition_refine_entropy(sys[i], alpha, config.block_length, config.samples, rng);
      json x = entropy_to_json(e);
      if (sys[i].kind() == SystemKind::bernoulli) x["exact_entropy"] = bernoulli_entropy(sys[i].shift());
      all.push_back(x);
      add_entropy_row(r, config, sys[i].name(), alpha.describe(), e);
    }
    r.steps["entropy"] = all;
  } else if (op == "classify") {
    need(2);
    EntropyVerdict v = entropy_classifier(sys[0].shift(), sys[1].shift(), config.tolerance);
    json ev{{"entropy_a", v.entropy_a}, {"entropy_b", v.entropy_b}, {"tolerance", config.tolerance}};
    r.steps["classify"] = ev;
    r.verdicts.push_back({"spacial", v.spacial, "exact", ev});
    r.verdicts.push_back({"spectral", v.spectral, "exact", ev});
  } else if (op == "correlation" || op == "mixing") {
    need(1);
    TestSet a = test_set_from_json(config.params.at("A"));
    TestSet b = config.params.contains("B") ? test_set_from_json(config.params.at("B")) : a;
    CorrelationMode mode = param_mode(config);
    std::string mname = mode.exact ? "exact" : "monte-carlo";
    if (op == "correlation") {
      CorrelationPoint c = correlation(sys[0], a, b, param_int(config, "i", 1), mode);
      r.steps["correlation"] = correlation_to_json(c);
      add_row(r, "mixing", kMixingHeader,
              {sys[0].name(), to_string(a), to_string(b), c.i, c.value, c.standard_error, mname});
    } else {
      MixingStatistic s = weak_mixing_statistic(sys[0], a, b, param_int(config, "t", 1000), mode);
      bool spectral = spectral_weak_mixing_check(spectrum_of(sys[0]));
      json ev{{"statistic", mixing_to_json(s)}, {"spectral_weak_mixing", spectral}};
      r.steps["mixing"] = ev;
      add_row(r, "mixing", kMixingStatHeader,
              {sys[0].name(), to_string(a), to_string(b), s.t, s.value, s.standard_error, mname});
      r.verdicts.push_back({"weak mixing",
                            spectral ? "consistent with weak mixing" : "not weakly mixing (nontrivial point spectrum)",
                            mname, ev});
    }
  } else {
    throw std::invalid_argument("unknown compute operation '" + op + "'");
  }
  return r;
}

ExperimentReport run_scenario(const ExperimentConfig& config) {
  if (config.scenario == "reproduce-letter") return run_reproduce_letter(config);
  if (config.scenario == "reproduce-kolmogorov") return run_reproduce_kolmogorov(config);
  if (config.scenario == "theorem1") return run_theorem1_check(config);
  if (config.scenario == "compute") return run_compute(config.params.value("op", std::string("spectrum")), config);
  throw std::invalid_argument("unknown scenario '" + config.scenario + "'");
}

ReportFormat report_format_from_string(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  throw std::invalid_argument("unknown report format '" + s + "'");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::filesystem::path> emit_report(const ExperimentReport& report, const std::filesystem::path& dir,
                                               ReportFormat format) {
  namespace fs = std::filesystem;
  if (dir.empty()) throw std::runtime_error("output directory is empty");
  std::error_code ec;
  if (fs::exists(dir, ec) && !fs::is_directory(dir, ec)) {
    throw std::runtime_error("output path " + dir.string() + " exists and is not a directory");
  }
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());

  std::vector<fs::path> written;
  auto write = [&](const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
    out.close();
    if (!out) throw std::runtime_error("cannot write " + p.string());
    written.push_back(p);
  };
  json j = report_to_json(report);
  write(dir / "report.json", j.dump(2) + "\n");
  json spectrum = report.steps.contains("spectrum") ? report.steps.at("spectrum") : json::object();
  write(dir / "spectrum.json", spectrum.dump(2) + "\n");
  if (format == ReportFormat::csv && report.steps.contains("tables")) {
    for (const auto& [name, t] : report.steps.at("tables").items()) {
      std::string text;
      const auto& header = t.at("header");
      for (std::size_t i = 0; i < header.size(); ++i) text += (i ? "," : "") + csv_field(header[i].get<std::string>());
      text += "\r\n";
      for (const auto& row : t.at("rows")) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (i) text += ",";
          text += csv_field(row[i].is_string() ? row[i].get<std::string>() : row[i].dump());
        }
        text += "\r\n";
      }
      write(dir / (name + ".csv"), text);
    }
  }
  return written;
}

}  // namespace ergodesk
