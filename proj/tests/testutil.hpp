#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "crr/bench.hpp"
#include "crr/circuit.hpp"
#include "crr/cnf.hpp"
#include "crr/netlist.hpp"
#include "crr/rng.hpp"

namespace testutil {

// Exhaustive satisfiability oracle, independent of the CDCL path: variable v
// takes bit v of the enumeration word.
inline bool brute_force_sat(const crr::CnfFormula& f) {
  const int n = f.num_vars();
  const std::uint64_t total = 1ull << n;
  for (std::uint64_t m = 0; m < total; ++m) {
    bool all = true;
    for (const crr::Clause& c : f.clauses()) {
      bool sat = false;
      for (crr::Lit l : c.lits())
        if ((((m >> l.var()) & 1u) != 0) != l.negated()) {
          sat = true;
          break;
        }
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

// All models of the formula over its full universe.
inline std::vector<crr::Assignment> enumerate_models(const crr::CnfFormula& f) {
  std::vector<crr::Var> vars;
  for (crr::Var v = 0; v < f.num_vars(); ++v) vars.push_back(v);
  std::vector<crr::Assignment> models;
  const std::uint64_t total = 1ull << vars.size();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    crr::Assignment a = crr::Assignment::from_index(vars, idx);
    if (f.satisfied_by(a)) models.push_back(std::move(a));
  }
  return models;
}

inline crr::CnfFormula random_cnf(crr::Rng& rng, int max_vars = 16) {
  const int n = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_vars)));
  const int m = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(4 * n + 2)));
  crr::CnfFormula f(n);
  for (int j = 0; j < m; ++j) {
    const int len =
        1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(std::min(4, n))));
    std::vector<crr::Lit> lits;
    std::vector<crr::Var> used;
    while (static_cast<int>(lits.size()) < len) {
      crr::Var v = static_cast<crr::Var>(rng.next_below(static_cast<std::uint64_t>(n)));
      bool dup = false;
      for (crr::Var u : used) dup |= (u == v);
      if (dup) continue;
      used.push_back(v);
      lits.emplace_back(v, rng.next_bool());
    }
    f.add_clause(crr::Clause(std::move(lits)));
  }
  return f;
}

// Random CNF over a fixed set of input variables (for exclusion constraints).
inline crr::CnfFormula random_input_cnf(crr::Rng& rng, int num_inputs,
                                        int max_clauses = 4) {
  crr::CnfFormula g(num_inputs, crr::VarRole::Input);
  const int m = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_clauses))) + 1;
  for (int j = 0; j < m; ++j) {
    const int len = 1 + static_cast<int>(rng.next_below(
                            static_cast<std::uint64_t>(std::min(3, num_inputs))));
    std::vector<crr::Lit> lits;
    std::vector<crr::Var> used;
    while (static_cast<int>(lits.size()) < len) {
      crr::Var v =
          static_cast<crr::Var>(rng.next_below(static_cast<std::uint64_t>(num_inputs)));
      bool dup = false;
      for (crr::Var u : used) dup |= (u == v);
      if (dup) continue;
      used.push_back(v);
      lits.emplace_back(v, rng.next_bool());
    }
    g.add_clause(crr::Clause(std::move(lits)));
  }
  return g;
}

// The reconvergent three-gate window computing y3 = (x1 == x2); standalone
// with y3 as the output.
inline crr::Circuit xnor_cone_circuit() {
  return crr::parse_netlist(
      "input x1 x2\n"
      "output y3\n"
      "and y1 x1 x2\n"
      "nor y2 x1 x2\n"
      "or y3 y1 y2\n",
      "xnor_cone");
}

// The same window feeding a random downstream circuit that consumes y3 and
// fresh inputs only (x1, x2 never feed the downstream logic directly).
inline crr::Circuit xnor_cone_embedded(crr::Rng& rng, int extra_inputs,
                                       int extra_gates) {
  crr::CircuitBuilder b("xnor_cone_embedded");
  b.input("x1").input("x2");
  std::vector<std::string> pool;
  for (int i = 1; i <= extra_inputs; ++i) {
    std::string n = "e" + std::to_string(i);
    b.input(n);
    pool.push_back(n);
  }
  b.gate(crr::GateKind::And, "y1", {"x1", "x2"});
  b.gate(crr::GateKind::Nor, "y2", {"x1", "x2"});
  b.gate(crr::GateKind::Or, "y3", {"y1", "y2"});
  pool.push_back("y3");
  std::string last = "y3";
  for (int i = 1; i <= extra_gates; ++i) {
    static const crr::GateKind kinds[] = {crr::GateKind::And, crr::GateKind::Or,
                                          crr::GateKind::Xor, crr::GateKind::Nand,
                                          crr::GateKind::Nor, crr::GateKind::Not};
    crr::GateKind k = kinds[rng.next_below(std::size(kinds))];
    std::string out = "d" + std::to_string(i);
    if (k == crr::GateKind::Not || pool.size() < 2) {
      b.gate(crr::GateKind::Not, out, {pool[rng.next_below(pool.size())]});
    } else {
      std::size_t a = rng.next_below(pool.size());
      std::size_t c = rng.next_below(pool.size() - 1);
      if (c >= a) ++c;
      b.gate(k, out, {pool[a], pool[c]});
    }
    pool.push_back(out);
    last = out;
  }
  b.output(last);
  return b.build();
}

// Exhaustive bug oracle: is there any input on which the circuit outputs 1?
inline std::optional<crr::Assignment> exhaustive_bug_search(const crr::Circuit& c) {
  const auto xs = c.inputs();
  const std::uint64_t total = 1ull << xs.size();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    crr::Assignment x = crr::Assignment::from_index(xs, idx);
    if (crr::simulate(c, x).value(c.output())) return x;
  }
  return std::nullopt;
}

}  // namespace testutil
