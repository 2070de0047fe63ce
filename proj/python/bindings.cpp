#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ergodesk/entropy.hpp"
#include "ergodesk/experiments.hpp"
#include "ergodesk/json_io.hpp"
#include "ergodesk/koopman.hpp"
#include "ergodesk/mixing.hpp"
#include "ergodesk/residual.hpp"
#include "ergodesk/tower.hpp"

namespace py = pybind11;
using namespace ergodesk;

// JSON crosses the boundary as text; the Python package wraps it in dicts.
namespace {

SystemSpec system_of(const std::string& s) { return system_from_json(json::parse(s)); }

std::string run(const std::string& config) {
  ExperimentConfig c = config_from_json(json::parse(config));
  c.validate();
  try {
    return report_to_json(run_scenario(c)).dump();
  } catch (const ScenarioInconclusive& e) {
    return report_to_json(e.report).dump();
  }
}

std::string spectrum(const std::string& system) { return descriptor_to_json(spectrum_of(system_of(system))).dump(); }

std::vector<std::string> tower(const std::string& system, int depth) {
  std::vector<std::string> out;
  for (const auto& l : compute_tower(system_of(system), depth)) out.push_back(l.characters.describe());
  return out;
}

std::string tower_evidence_json(const std::string& system) {
  return tower_evidence_to_json(tower_evidence(system_of(system))).dump();
}

std::string residual(const std::string& system, std::int64_t k, int window, int grid, int cutoff) {
  ResidualOptions o;
  o.window = window;
  o.grid = grid;
  o.cutoff = cutoff;
  return residual_to_json(quasi_eigen_residual_search(system_of(system), k, o)).dump();
}

std::string intertwiner(const std::string& a, const std::string& b, std::int64_t truncation) {
  auto p = build_intertwiner(system_of(a), system_of(b), truncation);
  return intertwiner_to_json(p, verify_intertwiner(p)).dump();
}

double entropy(const std::vector<double>& probs) { return bernoulli_entropy(BernoulliSpec::make(probs)); }

std::string correlation_json(const std::string& system, const std::string& a, const std::string& b, std::int64_t i,
                             std::uint64_t samples, std::uint64_t seed) {
  CorrelationMode m = samples == 0 ? CorrelationMode::closed_form() : CorrelationMode::monte_carlo(samples, seed);
  return correlation_to_json(correlation(system_of(system), test_set_from_json(json::parse(a)),
                                         test_set_from_json(json::parse(b)), i, m))
      .dump();
}

}  // namespace

PYBIND11_MODULE(_ergodesk, m) {
  m.doc() = "Spectral and spacial invariants of measure-preserving maps";
  m.attr("__version__") = kVersion;
  m.def("run_scenario", &run, py::arg("config"), "Run a scenario from a JSON config; returns the report as JSON.");
  m.def("spectrum", &spectrum, py::arg("system"));
  m.def("tower", &tower, py::arg("system"), py::arg("depth") = 3);
  m.def("tower_evidence", &tower_evidence_json, py::arg("system"));
  m.def("residual", &residual, py::arg("system"), py::arg("k"), py::arg("window") = 8, py::arg("grid") = 0,
        py::arg("cutoff") = 2);
  m.def("intertwiner", &intertwiner, py::arg("a"), py::arg("b"), py::arg("truncation") = 16);
  m.def("bernoulli_entropy", &entropy, py::arg("probs"));
  m.def("correlation", &correlation_json, py::arg("system"), py::arg("a"), py::arg("b"), py::arg("i"),
        py::arg("samples") = 0, py::arg("seed") = 0);
}
