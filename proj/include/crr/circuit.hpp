#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "crr/assignment.hpp"

namespace crr {

enum class GateKind {
  And,
  Or,
  Xor,
  Nand,
  Nor,
  Xnor,
  Not,
  Buf,
  Const0,
  Const1,
};

const char* to_string(GateKind kind);
std::optional<GateKind> gate_kind_from_string(std::string_view s);
bool arity_ok(GateKind kind, std::size_t fanin_count);

struct Gate {
  Var out = kNoVar;
  GateKind kind = GateKind::Buf;
  std::vector<Var> fanins;
};

struct CircuitError : std::runtime_error {
  explicit CircuitError(const std::string& msg, int tag = -1)
      : std::runtime_error(msg), tag(tag) {}
  int tag;  // caller-supplied marker, e.g. a source line number
};

// Combinational gate-level netlist. Variables are interned integers: the
// input variables occupy ids 0..|inputs|-1 in declaration order, gate output
// variables follow. After construction the gate list is topologically
// ordered and the structure is immutable.
class Circuit {
 public:
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  std::span<const Var> inputs() const { return inputs_; }
  std::span<const Gate> gates() const { return gates_; }
  std::span<const Var> outputs() const { return outputs_; }

  int num_vars() const { return static_cast<int>(names_.size()); }
  const std::string& var_name(Var v) const { return names_.at(static_cast<std::size_t>(v)); }
  std::optional<Var> find_var(std::string_view name) const;

  bool is_input(Var v) const;
  const Gate* gate_for(Var v) const;  // nullptr for inputs

  // Single-output convenience accessor; throws if the circuit has more than
  // one output.
  Var output() const;

 private:
  friend class CircuitBuilder;
  std::string name_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, Var> ids_;
  std::vector<Var> inputs_;
  std::vector<Gate> gates_;  // topological order
  std::vector<int> gate_index_;  // var -> index into gates_, or -1 for inputs
  std::vector<Var> outputs_;
};

// Name-based construction in arbitrary declaration order. build() interns
// variables (inputs first), resolves references, validates arities and
// uniqueness, and topologically sorts the gates, rejecting cycles.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(std::string name = "circuit") : name_(std::move(name)) {}

  CircuitBuilder& input(std::string name, int tag = -1);
  CircuitBuilder& gate(GateKind kind, std::string out,
                       std::vector<std::string> fanins, int tag = -1);
  CircuitBuilder& output(std::string name, int tag = -1);

  Circuit build() const;  // throws CircuitError

 private:
  struct RawGate {
    GateKind kind;
    std::string out;
    std::vector<std::string> fanins;
    int tag;
  };
  std::string name_;
  std::vector<std::pair<std::string, int>> inputs_;
  std::vector<RawGate> gates_;
  std::vector<std::pair<std::string, int>> outputs_;
};

// Evaluates the circuit on a complete input assignment; returns the values of
// every variable, indexed by variable id.
std::vector<std::uint8_t> evaluate_all(const Circuit& c, const Assignment& input);

// Deterministic topological evaluation; `input` must be complete over the
// circuit inputs. Returns a complete assignment to the outputs.
Assignment simulate(const Circuit& c, const Assignment& input);

// Rewrites AND/OR/NAND/NOR gates with more than two fanins into chains of
// binary gates. The original variable ids are preserved; helper gates get
// fresh ids appended after the existing ones.
Circuit decompose_to_binary(const Circuit& c);

// Returns a circuit in which every output is driven by a gate, inserting a
// buffer for outputs that name an input directly.
Circuit with_gate_outputs(const Circuit& c);

// Compiles a bad-output set into a single-output monitor: the monitor output
// is 1 exactly when the original outputs match one of the patterns. Patterns
// may be partial over the outputs (cube semantics); a complete pattern is a
// minterm detector.
Circuit make_monitor(const Circuit& c, const std::vector<Assignment>& bad_patterns);

// Side-by-side composition of two circuits over disjoint input sets, with the
// two outputs kept separate. The pairing gives the (left, right) input
// correspondence and fixes the order of the reported input lists.
struct Composition {
  Circuit circuit;
  std::vector<Var> left_inputs;   // in pairing order
  std::vector<Var> right_inputs;  // in pairing order
  Var left_output = kNoVar;
  Var right_output = kNoVar;
};
Composition compose_disjoint(const Circuit& left, const Circuit& right,
                             const std::vector<std::pair<Var, Var>>& pairing);

// Structural comparison by names: same input and output sequences and the
// same gate definitions (gate list order is irrelevant).
bool structurally_equal(const Circuit& a, const Circuit& b);

}  // namespace crr
