#include "crr/pqe.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "crr/rng.hpp"

namespace crr {

PqeResult take_out(const PqeTask& task, const PqeOptions& opts) {
  if (!task.g || !task.f) throw std::invalid_argument("pqe task is missing formulas");
  if (task.free_vars.empty())
    throw std::invalid_argument("pqe task has no free variables");
  if (static_cast<int>(task.free_vars.size()) > opts.max_free)
    throw std::invalid_argument("free-variable set too large for projection");
  std::set<Var> quantified(task.quantified.begin(), task.quantified.end());
  std::set<Var> free_set(task.free_vars.begin(), task.free_vars.end());
  for (Var v : task.free_vars)
    if (quantified.count(v))
      throw std::invalid_argument("free and quantified variable sets overlap");
  auto check_scope = [&](const CnfFormula& f) {
    for (const Clause& c : f.clauses())
      for (Lit l : c.lits())
        if (!quantified.count(l.var()) && !free_set.count(l.var()))
          throw std::invalid_argument("formula variable is neither free nor quantified");
  };
  check_scope(*task.g);
  check_scope(*task.f);

  const CnfFormula gf = conjoin(*task.g, *task.f);
  Solver f_solver(*task.f);
  Solver gf_solver(gf);
  Rng noise_rng(opts.noise.seed);

  PqeResult res;
  res.g_star = CnfFormula(task.f->num_vars());
  for (Var v = 0; v < task.f->num_vars(); ++v) {
    res.g_star.set_role(v, task.f->role(v));
    res.g_star.set_name(v, task.f->name(v));
  }

  const std::uint64_t total = 1ull << task.free_vars.size();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Assignment v = Assignment::from_index(task.free_vars, idx);
    std::vector<Lit> assumptions;
    for (Var fv : task.free_vars) assumptions.emplace_back(fv, !v.value(fv));

    SatOutcome with_g = gf_solver.solve(assumptions);
    res.stats.sat_calls++;
    res.stats.conflicts += with_g.conflicts();
    if (with_g.is_sat()) continue;  // v survives the exclusion, must satisfy g_star

    SatOutcome without_g = f_solver.solve(assumptions);
    res.stats.sat_calls++;
    res.stats.conflicts += without_g.conflicts();
    if (without_g.is_sat()) {
      // v is producible but only by excluded inputs: it must falsify g_star.
      res.g_star.add_clause(longest_falsified_clause(v));
      res.provenance.push_back(ClauseProvenance::SemanticMust);
    } else if (opts.noise.enabled &&
               noise_rng.next_unit() < opts.noise.probability) {
      // v is not in the range at all; excluding it is harmless noise.
      res.g_star.add_clause(longest_falsified_clause(v));
      res.provenance.push_back(ClauseProvenance::PossiblyNoisy);
      res.status = PqeStatus::Approximate;
    }
  }
  return res;
}

namespace {

struct ConeAnalysis {
  std::vector<Var> d_vars, e_vars, cut_vars;  // each sorted ascending
  std::vector<int> cone_gates;                // indices into circuit.gates()
  std::vector<const Clause*> constraints;     // input-only clauses over D u E
  bool feasible = false;
};

ConeAnalysis analyze_cone(const Clause& c, const CnfFormula& f,
                          const Circuit& circuit,
                          const LocalRedundancyLimits& lim) {
  ConeAnalysis an;
  std::set<Var> d_set;
  for (Lit l : c.lits()) {
    if (!circuit.is_input(l.var())) return an;
    d_set.insert(l.var());
  }
  if (static_cast<int>(d_set.size()) > lim.max_clause_vars) return an;

  const auto gates = circuit.gates();
  std::vector<char> in_cone(gates.size(), 0);
  std::vector<char> cone_out(static_cast<std::size_t>(circuit.num_vars()), 0);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    for (Var fv : gates[i].fanins)
      if (d_set.count(fv)) {
        in_cone[i] = 1;
        cone_out[static_cast<std::size_t>(gates[i].out)] = 1;
      }
  }
  // Absorb gates all of whose fanins are already cone outputs; this lets a
  // reconvergent window replace several cut variables with one.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < gates.size(); ++i) {
      if (in_cone[i] || gates[i].fanins.empty()) continue;
      bool all_inside = true;
      for (Var fv : gates[i].fanins)
        if (!cone_out[static_cast<std::size_t>(fv)]) {
          all_inside = false;
          break;
        }
      if (all_inside) {
        in_cone[i] = 1;
        cone_out[static_cast<std::size_t>(gates[i].out)] = 1;
        changed = true;
      }
    }
  }

  // Side variables of the cone must be primary inputs; an intermediate from
  // outside the cone would make the cut argument depend on foreign logic.
  std::set<Var> e_set;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (!in_cone[i]) continue;
    for (Var fv : gates[i].fanins) {
      if (d_set.count(fv) || cone_out[static_cast<std::size_t>(fv)]) continue;
      if (!circuit.is_input(fv)) return an;
      e_set.insert(fv);
    }
  }
  if (static_cast<int>(e_set.size()) > lim.max_env) return an;

  // No clause or environment variable may feed a gate outside the cone.
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (in_cone[i]) continue;
    for (Var fv : gates[i].fanins)
      if (d_set.count(fv) || e_set.count(fv)) return an;
  }

  // Cut: cone outputs visible from the rest of the circuit.
  std::set<Var> cut;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (in_cone[i]) continue;
    for (Var fv : gates[i].fanins)
      if (cone_out[static_cast<std::size_t>(fv)]) cut.insert(fv);
  }
  for (Var z : circuit.outputs())
    if (cone_out[static_cast<std::size_t>(z)]) cut.insert(z);
  if (static_cast<int>(cut.size()) > lim.max_cut) return an;

  // Constraint clauses already conjoined with the encoding (they are the
  // input-only clauses of f). A constraint coupling D with inputs outside
  // D u E would invalidate the local argument, so bail out on those.
  for (const Clause& cl : f.clauses()) {
    bool input_only = true, touches_d = false, inside = true;
    for (Lit l : cl.lits()) {
      if (!circuit.is_input(l.var())) {
        input_only = false;
        break;
      }
      if (d_set.count(l.var())) touches_d = true;
      if (!d_set.count(l.var()) && !e_set.count(l.var())) inside = false;
    }
    if (!input_only || !touches_d) continue;
    if (!inside) return an;
    an.constraints.push_back(&cl);
  }

  an.d_vars.assign(d_set.begin(), d_set.end());
  an.e_vars.assign(e_set.begin(), e_set.end());
  an.cut_vars.assign(cut.begin(), cut.end());
  for (std::size_t i = 0; i < gates.size(); ++i)
    if (in_cone[i]) an.cone_gates.push_back(static_cast<int>(i));
  an.feasible = true;
  return an;
}

std::uint8_t eval_gate_local(const Gate& g, const std::vector<std::uint8_t>& val) {
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
      return val[static_cast<std::size_t>(g.fanins[0])] ^
             val[static_cast<std::size_t>(g.fanins[1])];
    case GateKind::Xnor:
      return (val[static_cast<std::size_t>(g.fanins[0])] ^
              val[static_cast<std::size_t>(g.fanins[1])]) ^ 1;
    case GateKind::Not:
      return val[static_cast<std::size_t>(g.fanins[0])] ^ 1;
    case GateKind::Buf:
      return val[static_cast<std::size_t>(g.fanins[0])];
    case GateKind::Const0:
      return 0;
    case GateKind::Const1:
      return 1;
  }
  return 0;
}

}  // namespace

bool is_locally_redundant(const Clause& c, const CnfFormula& f,
                          const Circuit& circuit,
                          const LocalRedundancyLimits& limits) {
  if (c.empty()) return false;
  ConeAnalysis an = analyze_cone(c, f, circuit, limits);
  if (!an.feasible) return false;

  const auto gates = circuit.gates();
  std::vector<std::uint8_t> val(static_cast<std::size_t>(circuit.num_vars()), 0);
  const std::uint64_t d_total = 1ull << an.d_vars.size();
  const std::uint64_t e_total = 1ull << an.e_vars.size();

  for (std::uint64_t e_idx = 0; e_idx < e_total; ++e_idx) {
    for (std::size_t j = 0; j < an.e_vars.size(); ++j)
      val[static_cast<std::size_t>(an.e_vars[j])] =
          static_cast<std::uint8_t>((e_idx >> j) & 1u);

    std::uint64_t producible = 0, producible_c = 0;
    std::uint64_t producible_t = 0, producible_ct = 0;
    for (std::uint64_t d_idx = 0; d_idx < d_total; ++d_idx) {
      for (std::size_t j = 0; j < an.d_vars.size(); ++j)
        val[static_cast<std::size_t>(an.d_vars[j])] =
            static_cast<std::uint8_t>((d_idx >> j) & 1u);
      for (int gi : an.cone_gates) {
        const Gate& g = gates[static_cast<std::size_t>(gi)];
        val[static_cast<std::size_t>(g.out)] = eval_gate_local(g, val);
      }
      std::uint64_t s = 0;
      for (std::size_t j = 0; j < an.cut_vars.size(); ++j)
        s |= static_cast<std::uint64_t>(val[static_cast<std::size_t>(an.cut_vars[j])])
             << j;
      const std::uint64_t bit = 1ull << s;

      bool sat_c = false;
      for (Lit l : c.lits())
        if (l.satisfied_by(val[static_cast<std::size_t>(l.var())] != 0)) {
          sat_c = true;
          break;
        }
      bool sat_t = true;
      for (const Clause* cl : an.constraints) {
        bool sat = false;
        for (Lit l : cl->lits())
          if (l.satisfied_by(val[static_cast<std::size_t>(l.var())] != 0)) {
            sat = true;
            break;
          }
        if (!sat) {
          sat_t = false;
          break;
        }
      }

      producible |= bit;
      if (sat_c) producible_c |= bit;
      if (sat_t) {
        producible_t |= bit;
        if (sat_c) producible_ct |= bit;
      }
    }
    // Every producible cut assignment must stay producible under c, both
    // unconditionally and relative to the accumulated input constraints.
    if ((producible & ~producible_c) != 0) return false;
    if ((producible_t & ~producible_ct) != 0) return false;
  }
  return true;
}

SingleClauseVerdict solve_pqe_single_clause(const Clause& c, const CnfFormula& f,
                                            Var z, const Circuit* circuit,
                                            const LocalRedundancyLimits& limits,
                                            Budget budget, bool skip_local) {
  if (c.empty()) throw std::invalid_argument("cannot project an empty clause");
  if (z < 0 || z >= f.num_vars())
    throw std::invalid_argument("output variable outside formula universe");

  if (!skip_local && circuit && is_locally_redundant(c, f, *circuit, limits))
    return {SingleClauseStatus::Empty, ProofTier::Local, 0};

  CnfFormula fc = f;
  fc.add_clause(c);
  const Lit want_z[] = {pos(z)};
  SatOutcome out = solve(fc, want_z, budget);
  if (out.is_sat())
    return {SingleClauseStatus::Empty, ProofTier::Semantic, out.conflicts()};
  if (out.is_unsat())
    return {SingleClauseStatus::NotZ, ProofTier::Semantic, out.conflicts()};
  return {SingleClauseStatus::Unknown, ProofTier::Semantic, out.budget_spent()};
}

NoiseClass classify_noise(const Clause& clause, const CnfFormula& f, int max_free) {
  const std::vector<Var> free_vars = f.vars_with_role(VarRole::Output);
  std::set<Var> free_set(free_vars.begin(), free_vars.end());
  for (Lit l : clause.lits())
    if (!free_set.count(l.var()))
      throw std::invalid_argument("noise check: clause is not over free variables");
  std::vector<Var> rest;
  for (Var v : free_vars)
    if (!clause.contains_var(v)) rest.push_back(v);
  if (static_cast<int>(rest.size()) > max_free)
    throw std::invalid_argument("noise check: free-variable set too large");

  Solver solver(f);
  const std::uint64_t total = 1ull << rest.size();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Assignment v = Assignment::from_index(rest, idx);
    std::vector<Lit> assumptions;
    for (Lit l : clause.lits()) assumptions.emplace_back(l.var(), !l.falsifying_value());
    for (Var rv : rest) assumptions.emplace_back(rv, !v.value(rv));
    if (solver.solve(assumptions).is_unsat()) return NoiseClass::Noisy;
  }
  return NoiseClass::NoiseFree;
}

}  // namespace crr
