#include "crr/circuit.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace crr {

const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::And: return "and";
    case GateKind::Or: return "or";
    case GateKind::Xor: return "xor";
    case GateKind::Nand: return "nand";
    case GateKind::Nor: return "nor";
    case GateKind::Xnor: return "xnor";
    case GateKind::Not: return "not";
    case GateKind::Buf: return "buf";
    case GateKind::Const0: return "const0";
    case GateKind::Const1: return "const1";
  }
  return "?";
}

std::optional<GateKind> gate_kind_from_string(std::string_view s) {
  if (s == "and") return GateKind::And;
  if (s == "or") return GateKind::Or;
  if (s == "xor") return GateKind::Xor;
  if (s == "nand") return GateKind::Nand;
  if (s == "nor") return GateKind::Nor;
  if (s == "xnor") return GateKind::Xnor;
  if (s == "not") return GateKind::Not;
  if (s == "buf") return GateKind::Buf;
  if (s == "const0") return GateKind::Const0;
  if (s == "const1") return GateKind::Const1;
  return std::nullopt;
}

bool arity_ok(GateKind kind, std::size_t n) {
  switch (kind) {
    case GateKind::And:
    case GateKind::Or:
    case GateKind::Nand:
    case GateKind::Nor:
      return n >= 2;
    case GateKind::Xor:
    case GateKind::Xnor:
      return n == 2;
    case GateKind::Not:
    case GateKind::Buf:
      return n == 1;
    case GateKind::Const0:
    case GateKind::Const1:
      return n == 0;
  }
  return false;
}

std::optional<Var> Circuit::find_var(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

bool Circuit::is_input(Var v) const {
  return v >= 0 && v < num_vars() && gate_index_[static_cast<std::size_t>(v)] < 0;
}

const Gate* Circuit::gate_for(Var v) const {
  if (v < 0 || v >= num_vars()) return nullptr;
  int idx = gate_index_[static_cast<std::size_t>(v)];
  return idx < 0 ? nullptr : &gates_[static_cast<std::size_t>(idx)];
}

Var Circuit::output() const {
  if (outputs_.size() != 1)
    throw CircuitError("circuit '" + name_ + "' is not single-output");
  return outputs_[0];
}

CircuitBuilder& CircuitBuilder::input(std::string name, int tag) {
  inputs_.emplace_back(std::move(name), tag);
  return *this;
}

CircuitBuilder& CircuitBuilder::gate(GateKind kind, std::string out,
                                     std::vector<std::string> fanins, int tag) {
  gates_.push_back(RawGate{kind, std::move(out), std::move(fanins), tag});
  return *this;
}

CircuitBuilder& CircuitBuilder::output(std::string name, int tag) {
  outputs_.emplace_back(std::move(name), tag);
  return *this;
}

Circuit CircuitBuilder::build() const {
  Circuit c;
  c.name_ = name_;

  auto intern = [&c](const std::string& name, int tag) -> Var {
    auto [it, fresh] = c.ids_.emplace(name, static_cast<Var>(c.names_.size()));
    if (!fresh) throw CircuitError("duplicate definition of '" + name + "'", tag);
    c.names_.push_back(name);
    return it->second;
  };

  for (const auto& [name, tag] : inputs_) {
    c.inputs_.push_back(intern(name, tag));
  }
  std::vector<Gate> declared;
  declared.reserve(gates_.size());
  std::vector<int> tags;
  for (const auto& rg : gates_) {
    Gate g;
    g.out = intern(rg.out, rg.tag);
    g.kind = rg.kind;
    declared.push_back(std::move(g));
    tags.push_back(rg.tag);
  }
  // Fanins may reference gates declared later in the source; resolve once all
  // output variables are known.
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    const auto& rg = gates_[i];
    if (!arity_ok(rg.kind, rg.fanins.size()))
      throw CircuitError("gate '" + rg.out + "': arity mismatch for '" +
                             to_string(rg.kind) + "'",
                         rg.tag);
    for (const auto& fn : rg.fanins) {
      auto it = c.ids_.find(fn);
      if (it == c.ids_.end())
        throw CircuitError("undeclared variable '" + fn + "'", rg.tag);
      declared[i].fanins.push_back(it->second);
    }
  }

  // Kahn-style topological sort, deterministic: ready gates are emitted in
  // declaration order.
  const std::size_t n = declared.size();
  std::vector<int> gate_of_var(c.names_.size(), -1);
  for (std::size_t i = 0; i < n; ++i)
    gate_of_var[static_cast<std::size_t>(declared[i].out)] = static_cast<int>(i);
  std::vector<char> placed(n, 0);
  std::vector<char> ready_var(c.names_.size(), 0);
  for (Var v : c.inputs_) ready_var[static_cast<std::size_t>(v)] = 1;
  c.gates_.reserve(n);
  for (std::size_t placed_count = 0; placed_count < n;) {
    bool progress = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (placed[i]) continue;
      bool ok = true;
      for (Var f : declared[i].fanins)
        if (!ready_var[static_cast<std::size_t>(f)]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      placed[i] = 1;
      ready_var[static_cast<std::size_t>(declared[i].out)] = 1;
      c.gates_.push_back(declared[i]);
      ++placed_count;
      progress = true;
    }
    if (!progress) {
      for (std::size_t i = 0; i < n; ++i)
        if (!placed[i])
          throw CircuitError("cyclic definition involving '" +
                                 c.names_[static_cast<std::size_t>(declared[i].out)] + "'",
                             tags[i]);
    }
  }
  c.gate_index_.assign(c.names_.size(), -1);
  for (std::size_t i = 0; i < c.gates_.size(); ++i)
    c.gate_index_[static_cast<std::size_t>(c.gates_[i].out)] = static_cast<int>(i);

  if (outputs_.empty()) throw CircuitError("no outputs declared");
  std::set<std::string> seen_outputs;
  for (const auto& [name, tag] : outputs_) {
    auto it = c.ids_.find(name);
    if (it == c.ids_.end())
      throw CircuitError("undeclared variable '" + name + "'", tag);
    if (!seen_outputs.insert(name).second)
      throw CircuitError("duplicate output '" + name + "'", tag);
    c.outputs_.push_back(it->second);
  }
  return c;
}

namespace {

std::uint8_t eval_gate(const Gate& g, const std::vector<std::uint8_t>& val) {
  auto in = [&](std::size_t i) { return val[static_cast<std::size_t>(g.fanins[i])]; };
  switch (g.kind) {
    case GateKind::And: {
      std::uint8_t v = 1;
      for (Var f : g.fanins) v &= val[static_cast<std::size_t>(f)];
      return v;
    }
    case GateKind::Or: {
      std::uint8_t v = 0;
      for (Var f : g.fanins) v |= val[static_cast<std::size_t>(f)];
      return v;
    }
    case GateKind::Nand: {
      std::uint8_t v = 1;
      for (Var f : g.fanins) v &= val[static_cast<std::size_t>(f)];
      return v ^ 1;
    }
    case GateKind::Nor: {
      std::uint8_t v = 0;
      for (Var f : g.fanins) v |= val[static_cast<std::size_t>(f)];
      return v ^ 1;
    }
    case GateKind::Xor:
      return in(0) ^ in(1);
    case GateKind::Xnor:
      return (in(0) ^ in(1)) ^ 1;
    case GateKind::Not:
      return in(0) ^ 1;
    case GateKind::Buf:
      return in(0);
    case GateKind::Const0:
      return 0;
    case GateKind::Const1:
      return 1;
  }
  return 0;
}

}  // namespace

std::vector<std::uint8_t> evaluate_all(const Circuit& c, const Assignment& input) {
  if (!input.covers(c.inputs()))
    throw CircuitError("incomplete input assignment for '" + c.name() + "'");
  std::vector<std::uint8_t> val(static_cast<std::size_t>(c.num_vars()), 0);
  for (Var v : c.inputs()) val[static_cast<std::size_t>(v)] = input.value(v) ? 1 : 0;
  for (const Gate& g : c.gates()) val[static_cast<std::size_t>(g.out)] = eval_gate(g, val);
  return val;
}

Assignment simulate(const Circuit& c, const Assignment& input) {
  auto val = evaluate_all(c, input);
  Assignment out;
  for (Var z : c.outputs()) out.set(z, val[static_cast<std::size_t>(z)] != 0);
  return out;
}

Circuit decompose_to_binary(const Circuit& c) {
  bool needed = false;
  for (const Gate& g : c.gates())
    if (g.fanins.size() > 2) needed = true;
  if (!needed) return c;

  CircuitBuilder b(c.name());
  for (Var v : c.inputs()) b.input(c.var_name(v));
  int fresh = 0;
  for (const Gate& g : c.gates()) {
    const auto& out_name = c.var_name(g.out);
    if (g.fanins.size() <= 2) {
      std::vector<std::string> fns;
      for (Var f : g.fanins) fns.push_back(c.var_name(f));
      b.gate(g.kind, out_name, std::move(fns));
      continue;
    }
    // Left-associated chain; the final gate keeps the original kind and
    // output variable, so NAND/NOR reduce to an AND/OR prefix.
    GateKind chain = (g.kind == GateKind::And || g.kind == GateKind::Nand)
                         ? GateKind::And
                         : GateKind::Or;
    std::string acc = c.var_name(g.fanins[0]);
    for (std::size_t i = 1; i + 1 < g.fanins.size(); ++i) {
      std::string t = out_name + "#b" + std::to_string(fresh++);
      b.gate(chain, t, {acc, c.var_name(g.fanins[i])});
      acc = std::move(t);
    }
    b.gate(g.kind, out_name, {acc, c.var_name(g.fanins.back())});
  }
  for (Var z : c.outputs()) b.output(c.var_name(z));
  return b.build();
}

Circuit with_gate_outputs(const Circuit& c) {
  bool needed = false;
  for (Var z : c.outputs())
    if (c.is_input(z)) needed = true;
  if (!needed) return c;

  CircuitBuilder b(c.name());
  for (Var v : c.inputs()) b.input(c.var_name(v));
  for (const Gate& g : c.gates()) {
    std::vector<std::string> fns;
    for (Var f : g.fanins) fns.push_back(c.var_name(f));
    b.gate(g.kind, c.var_name(g.out), std::move(fns));
  }
  for (Var z : c.outputs()) {
    if (c.is_input(z)) {
      std::string buf_name = c.var_name(z) + "#out";
      b.gate(GateKind::Buf, buf_name, {c.var_name(z)});
      b.output(buf_name);
    } else {
      b.output(c.var_name(z));
    }
  }
  return b.build();
}

Circuit make_monitor(const Circuit& c, const std::vector<Assignment>& bad_patterns) {
  if (bad_patterns.empty())
    throw CircuitError("monitor requires at least one bad-output pattern");
  CircuitBuilder b(c.name() + "#monitor");
  for (Var v : c.inputs()) b.input(c.var_name(v));
  for (const Gate& g : c.gates()) {
    std::vector<std::string> fns;
    for (Var f : g.fanins) fns.push_back(c.var_name(f));
    b.gate(g.kind, c.var_name(g.out), std::move(fns));
  }

  std::set<Var> zset(c.outputs().begin(), c.outputs().end());
  std::map<Var, std::string> negated;  // output var -> name of its inverter
  int fresh = 0;
  std::vector<std::string> detectors;
  for (const auto& pat : bad_patterns) {
    if (pat.empty()) throw CircuitError("empty bad-output pattern");
    std::vector<std::string> literals;
    for (Var z : pat.vars()) {
      if (!zset.count(z))
        throw CircuitError("bad-output pattern references non-output variable '" +
                           c.var_name(z) + "'");
      if (pat.value(z)) {
        literals.push_back(c.var_name(z));
      } else {
        auto it = negated.find(z);
        if (it == negated.end()) {
          std::string nn = "#n_" + c.var_name(z);
          b.gate(GateKind::Not, nn, {c.var_name(z)});
          it = negated.emplace(z, nn).first;
        }
        literals.push_back(it->second);
      }
    }
    if (literals.size() == 1) {
      detectors.push_back(literals[0]);
    } else {
      std::string dn = "#bad" + std::to_string(fresh++);
      b.gate(GateKind::And, dn, std::move(literals));
      detectors.push_back(dn);
    }
  }
  std::string top;
  if (detectors.size() == 1 && fresh > 0) {
    top = detectors[0];
  } else if (detectors.size() == 1) {
    top = "#monitor";
    b.gate(GateKind::Buf, top, {detectors[0]});
  } else {
    top = "#monitor";
    b.gate(GateKind::Or, top, std::move(detectors));
  }
  b.output(top);
  return b.build();
}

Composition compose_disjoint(const Circuit& left, const Circuit& right,
                             const std::vector<std::pair<Var, Var>>& pairing) {
  CircuitBuilder b(left.name() + "+" + right.name());
  auto lname = [&](Var v) { return left.var_name(v) + "_1"; };
  auto rname = [&](Var v) { return right.var_name(v) + "_2"; };

  for (Var v : left.inputs()) b.input(lname(v));
  for (Var v : right.inputs()) b.input(rname(v));
  for (const Gate& g : left.gates()) {
    std::vector<std::string> fns;
    for (Var f : g.fanins) fns.push_back(lname(f));
    b.gate(g.kind, lname(g.out), std::move(fns));
  }
  for (const Gate& g : right.gates()) {
    std::vector<std::string> fns;
    for (Var f : g.fanins) fns.push_back(rname(f));
    b.gate(g.kind, rname(g.out), std::move(fns));
  }
  b.output(lname(left.output()));
  b.output(rname(right.output()));

  Composition comp{b.build(), {}, {}, kNoVar, kNoVar};
  for (const auto& [lv, rv] : pairing) {
    comp.left_inputs.push_back(*comp.circuit.find_var(lname(lv)));
    comp.right_inputs.push_back(*comp.circuit.find_var(rname(rv)));
  }
  comp.left_output = *comp.circuit.find_var(lname(left.output()));
  comp.right_output = *comp.circuit.find_var(rname(right.output()));
  return comp;
}

bool structurally_equal(const Circuit& a, const Circuit& b) {
  auto names_of = [](const Circuit& c, std::span<const Var> vs) {
    std::vector<std::string> out;
    for (Var v : vs) out.push_back(c.var_name(v));
    return out;
  };
  if (names_of(a, a.inputs()) != names_of(b, b.inputs())) return false;
  if (names_of(a, a.outputs()) != names_of(b, b.outputs())) return false;
  if (a.gates().size() != b.gates().size()) return false;
  using Def = std::pair<GateKind, std::vector<std::string>>;
  std::map<std::string, Def> da, db;
  for (const Gate& g : a.gates())
    da[a.var_name(g.out)] = {g.kind, names_of(a, g.fanins)};
  for (const Gate& g : b.gates())
    db[b.var_name(g.out)] = {g.kind, names_of(b, g.fanins)};
  return da == db;
}

}  // namespace crr
