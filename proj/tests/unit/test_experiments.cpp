#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ergodesk/experiments.hpp"
#include "ergodesk/json_io.hpp"

using namespace ergodesk;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("ergodesk_test_" + name);
  fs::remove_all(d);
  return d;
}

const Verdict& verdict(const ExperimentReport& r, const std::string& name) {
  for (const auto& v : r.verdicts) {
    if (v.name == name) return v;
  }
  throw std::runtime_error("no verdict " + name);
}

ExperimentConfig small_kolmogorov() {
  ExperimentConfig c;
  c.scenario = "reproduce-kolmogorov";
  c.samples = 20000;
  c.block_length = 6;
  return c;
}

}  // namespace

TEST(Json, SystemRoundTrip) {
  for (const auto& s : {SystemSpec::rotation(RotationNumber::silver()), SystemSpec::skew(RotationNumber::quadratic(2, -1, 2, 1)),
                        SystemSpec::bernoulli(BernoulliSpec::make({0.2, 0.8}, {3, 4})),
                        SystemSpec::product(RotationNumber::decimal("0.3819660112501051"), BernoulliSpec::fair_coin())}) {
    EXPECT_EQ(system_from_json(system_to_json(s)), s) << s.name();
  }
  auto bare = system_from_json(json{{"kind", "bernoulli"}, {"probs", {0.5, 0.5}}});
  EXPECT_EQ(bare.shift().probs.size(), 2u);
  EXPECT_EQ(system_from_json(json{{"kind", "skew"}}).gamma(), RotationNumber::silver());
  EXPECT_EQ(system_from_json(json{{"kind", "skew"}, {"gamma", "silver"}}).gamma(), RotationNumber::silver());
  EXPECT_THROW(system_from_json(json{{"kind", "baker"}}), std::invalid_argument);
  EXPECT_THROW(system_from_json(json{{"kind", "bernoulli"}, {"probs", {0.5, 0.6}}}), std::invalid_argument);
  EXPECT_THROW(system_from_json(json{{"kind", "rotation"}, {"gamma", "1.5"}}), std::invalid_argument);
}

TEST(Json, TestSetRoundTrip) {
  std::vector<TestSet> sets = {UInterval{0.1, 0.5}, TorusRect{0, 0.5, 0.25, 0.75},
                               CylinderTest{CylinderSet{{{0, 1}, {2, -1}}}},
                               ProductTest{{0, 0.5}, CylinderSet{{{-1, 1}}}}};
  for (const auto& s : sets) EXPECT_EQ(to_string(test_set_from_json(test_set_to_json(s))), to_string(s));
  EXPECT_THROW(test_set_from_json(json{{"type", "disc"}}), std::invalid_argument);
}

TEST(Config, RoundTripAndUnknownFields) {
  ExperimentConfig c;
  c.scenario = "compute";
  c.systems = {json{{"kind", "skew"}}};
  c.ks = {0, 3};
  c.seed = 99;
  c.bits = true;
  c.params = {{"op", "tower"}};
  auto back = config_from_json(config_to_json(c));
  EXPECT_EQ(config_to_json(back), config_to_json(c));
  EXPECT_THROW(config_from_json(json{{"seeed", 3}}), std::invalid_argument);
  EXPECT_THROW(config_from_json(json{{"window", "eight"}}), std::invalid_argument);
  EXPECT_THROW(config_from_json(json::array()), std::invalid_argument);
  ExperimentConfig bad;
  bad.scenario = "nope";
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = ExperimentConfig{};
  bad.tolerance = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Report, RoundTrip) {
  ExperimentConfig c;
  c.scenario = "theorem1";
  auto r = run_scenario(c);
  auto j = report_to_json(r);
  EXPECT_EQ(report_to_json(report_from_json(j)), j);
  EXPECT_THROW(report_from_json(json{{"scenario", "x"}}), std::invalid_argument);
}

TEST(Letter, DefaultVerdict) {
  auto r = run_reproduce_letter(ExperimentConfig{});
  EXPECT_EQ(verdict(r, "spectral").value, "spectrally isomorphic");
  EXPECT_EQ(verdict(r, "final").value, "spectrally isomorphic, not spacially isomorphic");
  EXPECT_EQ(r.status, "ok");
  EXPECT_EQ(r.steps["intertwiner"]["mismatches"], 0);
}

TEST(Letter, TwoSkewMapsAreNotDistinguished) {
  ExperimentConfig c;
  c.systems = {json{{"kind", "skew"}}, json{{"kind", "skew"}, {"gamma", {{"quadratic", {2, -1, 2, 1}}}}}};
  auto r = run_reproduce_letter(c);
  EXPECT_EQ(verdict(r, "final").value, "not distinguished by tower");
}

TEST(Letter, MismatchedAnglesRejected) {
  ExperimentConfig c;
  c.systems = {json{{"kind", "skew"}}, json{{"kind", "product"}, {"gamma", {{"quadratic", {-1, 1, 3, 1}}}}}};
  EXPECT_THROW(run_reproduce_letter(c), std::invalid_argument);
}

TEST(Kolmogorov, DefaultPair) {
  ExperimentConfig c = small_kolmogorov();
  auto r = run_reproduce_kolmogorov(c);
  EXPECT_EQ(verdict(r, "spacial 0-1").value, "not spacially isomorphic (entropy invariant)");
  EXPECT_EQ(verdict(r, "spectral 0-1").value, "spectrally isomorphic (both Lebesgue systems)");
  EXPECT_NEAR(r.steps["systems"][0]["entropy"].get<double>(), std::log(2.0), 1e-15);
  EXPECT_NEAR(r.steps["systems"][1]["entropy"].get<double>(), std::log(4.0), 1e-15);
  c.bits = true;
  auto b = run_reproduce_kolmogorov(c);
  EXPECT_NEAR(b.steps["systems"][1]["entropy"].get<double>(), 2.0, 1e-15);
  EXPECT_TRUE(b.steps["tables"]["entropy"]["header"].dump().find("estimate_bits") != std::string::npos);
}

TEST(Kolmogorov, TenDistinctEntropies) {
  ExperimentConfig c = small_kolmogorov();
  c.samples = 2000;
  c.block_length = 3;
  c.truncation = 4;
  for (int n = 2; n <= 11; ++n) {
    std::vector<double> p(static_cast<std::size_t>(n), 1.0 / n);
    double acc = 0;
    for (int i = 0; i + 1 < n; ++i) acc += p[static_cast<std::size_t>(i)];
    p.back() = 1.0 - acc;
    c.systems.push_back(json{{"kind", "bernoulli"}, {"probs", p}});
  }
  auto r = run_reproduce_kolmogorov(c);
  std::set<double> hs;
  for (const auto& s : r.steps["systems"]) hs.insert(s["entropy"].get<double>());
  EXPECT_EQ(hs.size(), 10u);
  int pairs = 0;
  for (const auto& v : r.verdicts) {
    if (v.name.rfind("spacial ", 0) == 0) {
      ++pairs;
      EXPECT_EQ(v.value, "not spacially isomorphic (entropy invariant)");
    }
  }
  EXPECT_EQ(pairs, 45);
}

TEST(Kolmogorov, RejectsNonBernoulli) {
  ExperimentConfig c = small_kolmogorov();
  c.systems = {json{{"kind", "skew"}}, json{{"kind", "bernoulli"}, {"probs", {0.5, 0.5}}}};
  EXPECT_THROW(run_reproduce_kolmogorov(c), std::invalid_argument);
}

TEST(Theorem1, Cases) {
  ExperimentConfig c;
  c.scenario = "theorem1";
  auto r = run_theorem1_check(c);
  EXPECT_EQ(verdict(r, "spectral").value, "spectrally isomorphic");
  EXPECT_LE(r.steps["conjugacy"]["max_residual"].get<double>(), 1e-12);
  EXPECT_EQ(r.steps["conjugacy"]["points"], 10000);

  c.systems = {json{{"kind", "rotation"}}, json{{"kind", "rotation"}, {"gamma", {{"quadratic", {-2, 2, 2, 1}}}}}};
  auto s = run_theorem1_check(c);
  EXPECT_EQ(verdict(s, "isomorphism").value, "not spectrally (hence not spacially) isomorphic");

  c.systems = {json{{"kind", "rotation"}}, json{{"kind", "rotation"}, {"gamma", "0.3"}}};
  EXPECT_THROW(run_theorem1_check(c), std::domain_error);
  c.systems = {json{{"kind", "rotation"}}, json{{"kind", "skew"}}};
  EXPECT_THROW(run_theorem1_check(c), std::invalid_argument);
}

TEST(Compute, Operations) {
  ExperimentConfig c;
  c.scenario = "compute";
  c.systems = {json{{"kind", "skew"}}, json{{"kind", "product"}, {"probs", {0.5, 0.5}}}};
  for (const char* op : {"spectrum", "tower", "intertwiner", "groups"}) {
    c.params = {{"op", op}};
    EXPECT_NO_THROW(run_scenario(c)) << op;
  }
  c.params = {{"op", "residual"}};
  c.ks = {1};
  c.window = 4;
  auto res = run_scenario(c);
  EXPECT_FALSE(res.steps["residuals"].empty());

  c.systems = {json{{"kind", "bernoulli"}, {"probs", {0.5, 0.5}}}, json{{"kind", "bernoulli"}, {"probs", {0.9, 0.1}}}};
  c.params = {{"op", "classify"}};
  EXPECT_EQ(verdict(run_scenario(c), "spacial").value, "not spacially isomorphic (entropy invariant)");
  c.params = {{"op", "mixing"}, {"A", {{"type", "cylinder"}, {"cylinder", {{0, 1}}}}}, {"t", 100}};
  auto m = run_scenario(c);
  EXPECT_LE(m.steps["mixing"]["statistic"]["value"].get<double>(), 1.0 / 400 + 1e-15);

  c.params = {{"op", "transmogrify"}};
  EXPECT_THROW(run_scenario(c), std::invalid_argument);
}

TEST(Emit, DeterministicBytes) {
  ExperimentConfig c = small_kolmogorov();
  auto a = report_to_json(run_scenario(c)).dump(2);
  auto b = report_to_json(run_scenario(c)).dump(2);
  EXPECT_EQ(a, b);
  c.seed += 1;
  EXPECT_NE(report_to_json(run_scenario(c)).dump(2), a);
}

TEST(Emit, WritesJsonAndCsv) {
  auto dir = scratch("emit");
  auto r = run_reproduce_letter(ExperimentConfig{});
  auto paths = emit_report(r, dir, ReportFormat::csv);
  std::set<std::string> names;
  for (const auto& p : paths) names.insert(p.filename().string());
  EXPECT_TRUE(names.contains("report.json"));
  EXPECT_TRUE(names.contains("spectrum.json"));
  EXPECT_TRUE(names.contains("tower.csv"));
  EXPECT_TRUE(names.contains("residuals.csv"));
  EXPECT_EQ(json::parse(slurp(dir / "report.json")), report_to_json(r));
  std::string csv = slurp(dir / "tower.csv");
  EXPECT_EQ(csv.rfind("system,depth,generators,provenance\r\n", 0), 0u);
  EXPECT_NE(csv.find("\"<(1,0), (0,1)>\""), std::string::npos);

  auto again = scratch("emit2");
  emit_report(r, again, ReportFormat::csv);
  EXPECT_EQ(slurp(dir / "tower.csv"), slurp(again / "tower.csv"));
  EXPECT_EQ(slurp(dir / "report.json"), slurp(again / "report.json"));

  auto json_only = emit_report(r, scratch("emit3"), ReportFormat::json);
  EXPECT_EQ(json_only.size(), 2u);
  fs::remove_all(dir);
  fs::remove_all(again);
}

TEST(Emit, BadDirectory) {
  auto r = run_theorem1_check([] {
    ExperimentConfig c;
    c.scenario = "theorem1";
    return c;
  }());
  auto file = scratch("file");
  { std::ofstream(file) << "x"; }
  EXPECT_THROW(emit_report(r, file, ReportFormat::json), std::runtime_error);
  EXPECT_THROW(emit_report(r, "", ReportFormat::json), std::runtime_error);
  fs::remove(file);
  EXPECT_THROW(report_format_from_string("xml"), std::invalid_argument);
}

TEST(Emit, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("line\nbreak"), "\"line\nbreak\"");
}
