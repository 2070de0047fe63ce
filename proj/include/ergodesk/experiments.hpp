#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ergodesk/json_io.hpp"

namespace ergodesk {

inline constexpr const char* kVersion = "0.1.0";

struct ExperimentConfig {
  std::string scenario = "reproduce-letter";
  /// Raw system specs; scenario defaults apply when empty.
  std::vector<json> systems;
  std::int64_t truncation = 16;
  int window = 8;
  std::vector<std::int64_t> ks = {0, 1, -1, 2, -2};
  std::uint64_t samples = 200000;
  int block_length = 10;
  std::uint64_t seed = 20260101;
  int precision_bits = RotationNumber::kDefaultPrecisionBits;
  bool bits = false;
  double tolerance = 1e-9;
  /// Extra inputs for the compute scenario (test sets, k, depth, ...).
  json params = json::object();

  /// Throws std::invalid_argument on unknown scenario or non-positive numbers.
  void validate() const;
  std::vector<SystemSpec> resolved_systems() const;
};

json config_to_json(const ExperimentConfig& c);
/// Missing fields keep their defaults; unknown fields are rejected.
ExperimentConfig config_from_json(const json& j);

struct Verdict {
  std::string name;
  std::string value;
  /// exact | monte-carlo | residual-certified
  std::string provenance;
  json evidence;
};

struct ExperimentReport {
  std::string scenario;
  std::string version = kVersion;
  std::uint64_t seed = 0;
  json inputs = json::object();
  json steps = json::object();
  std::vector<Verdict> verdicts;
  /// ok | inconclusive
  std::string status = "ok";
  std::vector<std::string> notes;
};

json report_to_json(const ExperimentReport& r);
ExperimentReport report_from_json(const json& j);

/// Thrown when a sub-step cannot decide; carries the report up to that point.
struct ScenarioInconclusive : std::runtime_error {
  ScenarioInconclusive(const std::string& what, ExperimentReport partial)
      : std::runtime_error(what), report(std::move(partial)) {}
  ExperimentReport report;
};

ExperimentReport run_reproduce_letter(const ExperimentConfig& config);
ExperimentReport run_reproduce_kolmogorov(const ExperimentConfig& config);
ExperimentReport run_theorem1_check(const ExperimentConfig& config);
/// Single operation by name: spectrum, tower, residual, intertwiner, groups,
/// entropy, classify, correlation, mixing.
ExperimentReport run_compute(const std::string& op, const ExperimentConfig& config);
ExperimentReport run_scenario(const ExperimentConfig& config);

enum class ReportFormat { json, csv };
ReportFormat report_format_from_string(const std::string& s);

/// Writes report.json and spectrum.json, plus one CSV per data family for the
/// csv format. Returns the written paths. Throws std::runtime_error naming the
/// path on I/O failure.
std::vector<std::filesystem::path> emit_report(const ExperimentReport& report, const std::filesystem::path& dir,
                                               ReportFormat format);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);

}  // namespace ergodesk
