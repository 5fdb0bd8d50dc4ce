#pragma once

#include <string>

#include <json.hpp>

#include "statechan/sim.hpp"

namespace statechan::sim {

constexpr int kScenarioFormatVersion = 1;

/// Parses a scenario file. Throws std::runtime_error on malformed JSON,
/// unknown fields, a format_version mismatch, or semantic validation errors.
Scenario scenario_from_json(const nlohmann::ordered_json& j);
Scenario load_scenario(const std::string& path);

nlohmann::ordered_json scenario_to_json(const Scenario& s);
void save_scenario(const Scenario& s, const std::string& path);

}  // namespace statechan::sim
