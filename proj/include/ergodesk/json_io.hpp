#pragma once

#include <nlohmann/json.hpp>

#include "ergodesk/entropy.hpp"
#include "ergodesk/koopman.hpp"
#include "ergodesk/mixing.hpp"
#include "ergodesk/residual.hpp"
#include "ergodesk/systems.hpp"
#include "ergodesk/tower.hpp"

namespace ergodesk {

using json = nlohmann::json;

/// {"quadratic": [p, q, d, r]} or {"decimal": "0.414...", "bits": 128}.
json gamma_to_json(const RotationNumber& gamma);
RotationNumber gamma_from_json(const json& j, int default_bits = RotationNumber::kDefaultPrecisionBits);

/// {"probs": [...], "symbols": [...]}; symbols optional on input.
json bernoulli_to_json(const BernoulliSpec& spec);
BernoulliSpec bernoulli_from_json(const json& j);

/// {"kind": "skew", "gamma": ..., "shift": ...}. A bare "probs" array is
/// accepted in place of "shift". Throws std::invalid_argument on bad input.
json system_to_json(const SystemSpec& spec);
SystemSpec system_from_json(const json& j, int default_bits = RotationNumber::kDefaultPrecisionBits);

json cylinder_to_json(const CylinderSet& c);
CylinderSet cylinder_from_json(const json& j);
json test_set_to_json(const TestSet& s);
TestSet test_set_from_json(const json& j);

json descriptor_to_json(const SpectrumDescriptor& d);
json lattice_to_json(const CharacterLattice& l);
json level_to_json(const TowerLevel& l);
json residual_to_json(const ResidualReport& r);
json thresholds_to_json(const ResidualThresholds& t);
json tower_evidence_to_json(const TowerEvidence& e);
json entropy_to_json(const EntropyEstimate& e);
json intertwiner_to_json(const IntertwinerPairing& p, const IntertwinerCheck& c);
json comparison_to_json(const GroupComparison& g);
json correlation_to_json(const CorrelationPoint& c);
json mixing_to_json(const MixingStatistic& s);

}  // namespace ergodesk
