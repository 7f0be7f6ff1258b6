// serialize.hpp — JSON schemas used by the CLI: complex matrices as nested
// arrays of [re, im] pairs (row-major), system configs, schedules, reports.

#pragma once

#include "cool/models.hpp"
#include "cool/quantum.hpp"

#include <json.hpp>

#include <string>

namespace cool {

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

enum class BuiltinTag { none, lambda, vsys, spinspin, qubit_rank_one };

struct SystemConfig {
    std::string name;
    BuiltinTag builtin = BuiltinTag::none;
    double g1 = 1.0, g2 = 2.0;  // lambda / vsys rates
    double nu = 0.5;            // qubit_rank_one parameter
    LindbladSystem system;
};

// Parses a config with either explicit matrices or a builtin tag
// (exactly one of the two); throws std::invalid_argument on schema errors.
SystemConfig parse_system_config(const nlohmann::json& j);

nlohmann::json verdict_to_json(const struct CoolabilityVerdict& v);
nlohmann::json schedule_to_json(const CoolingSchedule& s);
nlohmann::json report_to_json(const ConjectureReport& r);

// atomic file write: temp file in the same directory, then rename
void write_file_atomic(const std::string& path, const std::string& contents);

// 17 significant digits, round-trip exact for doubles
std::string fmt_double(double x);

}  // namespace cool
