#include "crr/equiv.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <stdexcept>

namespace crr {

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

Assignment input_part(const Assignment& model, std::span<const Var> inputs) {
  return model.restricted_to(inputs);
}

void revalidate_cex(const Circuit& n1, const Circuit& n2,
                    const std::vector<std::pair<Var, Var>>& pairing,
                    const Assignment& cex) {
  Assignment x2;
  for (const auto& [lv, rv] : pairing) x2.set(rv, cex.value(lv));
  const bool z1 = simulate(n1, cex).value(n1.output());
  const bool z2 = simulate(n2, x2).value(n2.output());
  if (z1 == z2)
    throw std::logic_error("internal error: counterexample fails re-simulation");
}

}  // namespace

std::vector<std::pair<Var, Var>> pair_inputs(const Circuit& n1, const Circuit& n2) {
  if (n1.inputs().size() != n2.inputs().size())
    throw std::invalid_argument("input-interface mismatch: " +
                                std::to_string(n1.inputs().size()) + " vs " +
                                std::to_string(n2.inputs().size()) + " inputs");
  std::set<std::string> names1, names2;
  for (Var v : n1.inputs()) names1.insert(n1.var_name(v));
  for (Var v : n2.inputs()) names2.insert(n2.var_name(v));
  std::vector<std::pair<Var, Var>> pairing;
  if (names1 == names2) {
    for (Var v : n1.inputs()) pairing.emplace_back(v, *n2.find_var(n1.var_name(v)));
  } else {
    for (std::size_t i = 0; i < n1.inputs().size(); ++i)
      pairing.emplace_back(n1.inputs()[i], n2.inputs()[i]);
  }
  return pairing;
}

ConstClass is_constant(const Circuit& c0) {
  const Circuit c = with_gate_outputs(c0);
  const CnfFormula f = tseitin_encode(c);
  const Var z = c.output();
  Solver solver(f);
  const Lit z_true[] = {pos(z)};
  if (solver.solve(z_true).is_unsat()) return ConstClass::Const0;
  const Lit z_false[] = {neg(z)};
  if (solver.solve(z_false).is_unsat()) return ConstClass::Const1;
  return ConstClass::NonConst;
}

CnfFormula build_miter(const Circuit& n1, const Circuit& n2) {
  const auto pairing = pair_inputs(n1, n2);
  const Circuit c1 = with_gate_outputs(n1);
  const Circuit c2 = with_gate_outputs(n2);
  const CnfFormula f1 = tseitin_encode(c1);
  const CnfFormula f2 = tseitin_encode(c2);

  // Relocate n2's variables: inputs onto their partners in n1's space,
  // everything else above n1's universe.
  std::vector<Var> map(static_cast<std::size_t>(f2.num_vars()), kNoVar);
  std::map<Var, Var> paired;
  for (auto [lv, rv] : pairing) paired[rv] = lv;
  Var next = static_cast<Var>(f1.num_vars());
  for (Var v = 0; v < f2.num_vars(); ++v) {
    auto it = paired.find(v);
    map[static_cast<std::size_t>(v)] = it != paired.end() ? it->second : next++;
  }
  const CnfFormula f2m = remap_vars(f2, map, next);
  return miter(f1, f2m);
}

EcVerdict ec_cdcl(const Circuit& n1, const Circuit& n2) {
  Timer timer;
  EcVerdict verdict;
  const auto pairing = pair_inputs(n1, n2);
  const CnfFormula m = build_miter(n1, n2);
  SatOutcome out = solve(m);
  verdict.stats.sat_calls = 1;
  verdict.stats.conflicts = out.conflicts();
  if (out.is_unsat()) {
    verdict.kind = EcVerdict::Kind::Equivalent;
  } else {
    verdict.kind = EcVerdict::Kind::Inequivalent;
    Assignment cex = input_part(out.model(), with_gate_outputs(n1).inputs());
    revalidate_cex(n1, n2, pairing, cex);
    verdict.counterexample = std::move(cex);
  }
  verdict.stats.wall_seconds = timer.seconds();
  return verdict;
}

CrrProjection ec_crr_projection(const Circuit& n1, const Circuit& n2,
                                const EcCrrOptions& opts) {
  const auto pairing = pair_inputs(n1, n2);
  const Circuit c1 = with_gate_outputs(n1);
  const Circuit c2 = with_gate_outputs(n2);
  Composition comp = compose_disjoint(c1, c2, pairing);

  CrrProjection proj{std::move(comp), {}};
  const CnfFormula f = tseitin_encode(proj.composition.circuit);
  const CnfFormula eq =
      build_eq(proj.composition.left_inputs, proj.composition.right_inputs,
               f.num_vars());
  PqeTask task;
  task.g = &eq;
  task.f = &f;
  task.free_vars = {proj.composition.left_output, proj.composition.right_output};
  for (Var v = 0; v < f.num_vars(); ++v)
    if (v != proj.composition.left_output && v != proj.composition.right_output)
      task.quantified.push_back(v);
  PqeOptions popts;
  popts.noise = opts.noise;
  proj.projection = take_out(task, popts);
  return proj;
}

EcVerdict ec_crr(const Circuit& n1, const Circuit& n2, const EcCrrOptions& opts) {
  Timer timer;
  EcVerdict verdict;
  const auto pairing = pair_inputs(n1, n2);

  CrrProjection proj = ec_crr_projection(n1, n2, opts);
  const Var zl = proj.composition.left_output;
  const Var zr = proj.composition.right_output;
  const CnfFormula& h = proj.projection.g_star;
  verdict.stats.pqe_sat_calls = proj.projection.stats.sat_calls;
  verdict.stats.sat_calls = proj.projection.stats.sat_calls;
  verdict.stats.conflicts = proj.projection.stats.conflicts;

  auto h_at = [&](bool a, bool b) {
    Assignment v;
    v.set(zl, a);
    v.set(zr, b);
    return h.satisfied_by(v);
  };
  const bool h01 = h_at(false, true);
  const bool h10 = h_at(true, false);

  if (!h01 && !h10) {
    // Both disagreement outputs disappear once the inputs are forced equal.
    verdict.kind = EcVerdict::Kind::Equivalent;
    verdict.stats.wall_seconds = timer.seconds();
    return verdict;
  }

  const ConstClass cc1 = is_constant(n1);
  const ConstClass cc2 = is_constant(n2);
  verdict.stats.sat_calls += 4;
  if (cc1 == cc2 && cc1 != ConstClass::NonConst) {
    verdict.kind = EcVerdict::Kind::Equivalent;
    verdict.stats.wall_seconds = timer.seconds();
    return verdict;
  }

  verdict.kind = EcVerdict::Kind::Inequivalent;

  // Extract a counterexample from the surviving disagreement point; when that
  // point is not producible at all (constant mismatches), fall back to the
  // shared-input miter.
  const CnfFormula f = tseitin_encode(proj.composition.circuit);
  const CnfFormula eq = build_eq(proj.composition.left_inputs,
                                 proj.composition.right_inputs, f.num_vars());
  const CnfFormula eq_f = conjoin(eq, f);
  Solver solver(eq_f);
  std::optional<Assignment> cex;
  for (auto [a, b] : {std::pair<bool, bool>{false, true}, {true, false}}) {
    if (!(a ? h10 : h01)) continue;
    const Lit assumptions[] = {Lit(zl, !a), Lit(zr, !b)};
    SatOutcome out = solver.solve(assumptions);
    verdict.stats.sat_calls++;
    verdict.stats.conflicts += out.conflicts();
    if (out.is_sat()) {
      Assignment x;
      for (std::size_t i = 0; i < pairing.size(); ++i)
        x.set(pairing[i].first,
              out.model().value(proj.composition.left_inputs[i]));
      cex = std::move(x);
      break;
    }
  }
  if (!cex) {
    SatOutcome out = solve(build_miter(n1, n2));
    verdict.stats.sat_calls++;
    verdict.stats.conflicts += out.conflicts();
    if (!out.is_sat())
      throw std::logic_error("internal error: inequivalent pair has unsatisfiable miter");
    cex = input_part(out.model(), with_gate_outputs(n1).inputs());
  }
  revalidate_cex(n1, n2, pairing, *cex);
  verdict.counterexample = std::move(cex);
  verdict.stats.wall_seconds = timer.seconds();
  return verdict;
}

}  // namespace crr
