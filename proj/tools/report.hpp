#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "crr/assignment.hpp"
#include "crr/circuit.hpp"

namespace crr::cli {

inline constexpr const char* kToolName = "crr";
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

// Reports are machine-readable JSON on stdout (optionally mirrored to a
// file); the human-readable summary goes to stderr. Wall-clock time is kept
// out of the JSON so fixed-seed reruns are byte-identical.
Json make_report(const std::string& command);

Json witness_json(const Circuit& c, const Assignment& x);

void emit_report(const Json& report, const std::optional<std::string>& json_path);

}  // namespace crr::cli
