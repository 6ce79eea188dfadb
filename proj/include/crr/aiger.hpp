#pragma once

#include <string>
#include <string_view>

#include "crr/circuit.hpp"

namespace crr {

// Reader for the AIGER ASCII format ("aag M I L O A"). Only combinational
// files are accepted (L must be 0). AND gates are kept as binary AND gates;
// negated literals are materialized as NOT gates, constants as CONST gates.
// Symbol-table input names are honored when present.
Circuit parse_aiger_ascii(std::string_view text, std::string name = "aiger");

Circuit read_aiger_file(const std::string& path);

// Dispatches on content: files starting with "aag" are AIGER, anything else
// is treated as a netlist.
Circuit read_circuit_file(const std::string& path);

}  // namespace crr
