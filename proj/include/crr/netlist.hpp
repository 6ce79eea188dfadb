#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "crr/circuit.hpp"

namespace crr {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg
                                    : msg),
        line(line) {}
  int line;
};

// Line-oriented netlist format: '#' starts a comment, `input <name>...` and
// `output <name>...` declare interface variables, and `<kind> <out> <in>...`
// declares a gate. Declarations may appear in any order as long as the
// resulting graph is acyclic.
Circuit parse_netlist(std::string_view text, std::string name = "circuit");

// Canonical form: one input line, one output line, gates in topological
// order. parse_netlist(print_netlist(c)) is structurally equal to c.
std::string print_netlist(const Circuit& c);

Circuit read_netlist_file(const std::string& path);

}  // namespace crr
