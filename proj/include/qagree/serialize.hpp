#pragma once

#include <optional>
#include <string>

#include "qagree/classical.hpp"
#include "qagree/quantum_model.hpp"

namespace qagree {

// Parsed scenario file: exactly one of the three payloads is present,
// matching `kind`. Construction goes through the module validators, so a
// successful parse is a valid object.
struct ScenarioFile {
    enum class Kind { Quantum, Classical, Box };

    int format_version = 1;
    Kind kind = Kind::Quantum;
    std::optional<Scenario> scenario;
    std::optional<ClassicalModel> model;
    std::optional<NoSignalingBox> box;
};

ScenarioFile parse_scenario_file(const std::string& json_text);
ScenarioFile load_scenario_file(const std::string& path);

// Canonical serializations (explicit operator entries, stable key order,
// complex numbers as [real, imag] pairs, rationals as [num, den]).
std::string serialize_scenario(const Scenario& s);
std::string serialize_model(const ClassicalModel& m);
std::string serialize_box(const NoSignalingBox& box);

}  // namespace qagree
