#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "crr/circuit.hpp"
#include "crr/rng.hpp"

namespace crr {

enum class BugKind : std::uint8_t { None, GateFlip, FaninSwap, PolarityFlip };
const char* to_string(BugKind kind);
std::optional<BugKind> bug_kind_from_string(std::string_view s);

struct BenchSpec {
  int num_inputs = 4;
  int num_gates = 8;
  int rewrite_steps = 4;
  BugKind bug = BugKind::None;
  std::uint64_t seed = 0;
};

// Random single-output circuit; when num_outputs > 1 the last gates drive the
// extra outputs.
Circuit random_circuit(int num_inputs, int num_gates, Rng& rng,
                       int num_outputs = 1, const std::string& name = "rand");

// Function-preserving local rewrites: fanin commutation, double negation,
// De Morgan, and AND/OR re-association (flatten/split).
Circuit rewrite_equivalent(const Circuit& c, int steps, Rng& rng);

// Mutates the circuit with the requested bug kind, retrying until the
// function changes (certified by truth tables up to 10 inputs). Returns
// nullopt when no function-changing mutation was found.
std::optional<Circuit> inject_bug(const Circuit& c, BugKind kind, Rng& rng);

// Exhaustive functional comparison (inputs paired by name, else by order).
bool truth_table_equal(const Circuit& n1, const Circuit& n2);

struct BenchPair {
  Circuit left;
  Circuit right;
  bool expected_equivalent = true;
  bool certified = false;  // verdict confirmed by truth table at generation
};

BenchPair generate_pair(const BenchSpec& spec);

}  // namespace crr
