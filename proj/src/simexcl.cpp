#include "crr/simexcl.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace crr {

const char* to_string(SimExclMode mode) {
  switch (mode) {
    case SimExclMode::Basic: return "basic";
    case SimExclMode::WithSatChecks: return "sat";
    case SimExclMode::WithSimRuns: return "sim";
    case SimExclMode::Both: return "both";
  }
  return "?";
}

const char* to_string(SimExclExit exit_path) {
  switch (exit_path) {
    case SimExclExit::ImmediateHit: return "immediate-hit";
    case SimExclExit::InputsExhausted: return "inputs-exhausted";
    case SimExclExit::BreakNoiseFree: return "break-noise-free";
    case SimExclExit::BreakRealBug: return "break-real-bug";
    case SimExclExit::PeriodicSat: return "periodic-sat";
    case SimExclExit::PeriodicSim: return "periodic-sim";
  }
  return "?";
}

Assignment gen_inp(std::span<const Var> xs, Rng& rng) {
  if (xs.empty()) throw std::invalid_argument("cannot draw an empty input");
  Assignment a;
  for (Var v : xs) a.set(v, rng.next_bool());
  return a;
}

SatOutcome check_excluded_is_real(const Clause& c, const CnfFormula& f_cur, Var z,
                                  const CnfFormula* g) {
  if (g) {
    for (const Clause& gc : g->clauses()) {
      bool present = false;
      for (const Clause& fc : f_cur.clauses())
        if (fc == gc) {
          present = true;
          break;
        }
      if (!present)
        throw std::invalid_argument(
            "exclusion clause missing from the current formula");
    }
  }
  CnfFormula query = f_cur;
  for (Lit l : c.lits()) query.add_clause(Clause({~l}));
  const Lit want_z[] = {pos(z)};
  return solve(query, want_z);
}

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

struct RunContext {
  const Circuit* circuit;
  const SimExclConfig* cfg;
  SimExclStats* stats;
  Rng* rng;
};

std::optional<Assignment> periodic_sat_check(const CnfFormula& f_cur, Var z,
                                             RunContext& ctx, bool& decided,
                                             bool& buggy) {
  ctx.stats->sat_checks++;
  ctx.stats->sat_calls++;
  const Lit want_z[] = {pos(z)};
  SatOutcome out = solve(f_cur, want_z, ctx.cfg->sat_budget);
  ctx.stats->conflicts += out.conflicts();
  if (out.is_unknown()) {
    decided = false;
    return std::nullopt;
  }
  decided = true;
  if (out.is_unsat()) {
    buggy = false;
    return std::nullopt;
  }
  buggy = true;
  return out.model().restricted_to(ctx.circuit->inputs());
}

std::optional<Assignment> periodic_sim_run(const CnfFormula& g, RunContext& ctx) {
  const auto xs = ctx.circuit->inputs();
  std::uint64_t tested = 0;
  // Only tests that have not been excluded yet are useful; rejection-sample
  // against the accumulated exclusion clauses first.
  const std::uint64_t draw_cap = 16 * ctx.cfg->sim_tries;
  for (std::uint64_t draws = 0;
       tested < ctx.cfg->sim_tries && draws < draw_cap; ++draws) {
    Assignment x = gen_inp(xs, *ctx.rng);
    if (!g.satisfied_by(x)) continue;
    ++tested;
    ctx.stats->sim_tests++;
    if (simulate(*ctx.circuit, x).value(ctx.circuit->outputs()[0])) return x;
  }
  // Rejection sampling starves once most inputs are excluded; fall back to
  // solver-driven sampling with randomized polarities.
  for (; tested < ctx.cfg->sim_tries; ++tested) {
    auto x = sample_sat_assign(g, ctx.rng->next_u64());
    if (!x) break;  // unreachable while the protected input satisfies g
    ctx.stats->sim_tests++;
    if (simulate(*ctx.circuit, *x).value(ctx.circuit->outputs()[0])) return *x;
  }
  return std::nullopt;
}

}  // namespace

SimExclOutcome sim_by_excl(const Circuit& c0, const SimExclConfig& cfg) {
  Timer timer;
  const Circuit c = with_gate_outputs(c0);
  if (c.outputs().size() != 1)
    throw std::invalid_argument("verification requires a single-output circuit");
  const auto xs = c.inputs();
  if (xs.empty())
    throw std::invalid_argument("verification requires at least one input");

  SimExclOutcome outcome;
  SimExclStats& st = outcome.stats;
  Rng rng(cfg.seed);
  RunContext ctx{&c, &cfg, &st, &rng};

  auto finish = [&](bool buggy, std::optional<Assignment> cex, SimExclExit exit_path) {
    outcome.buggy = buggy;
    outcome.counterexample = std::move(cex);
    st.exit_path = exit_path;
    st.wall_seconds = timer.seconds();
    return std::move(outcome);
  };

  const Assignment x_hat = gen_inp(xs, rng);
  if (simulate(c, x_hat).value(c.output()))
    return finish(true, x_hat, SimExclExit::ImmediateHit);

  CnfFormula f_cur = tseitin_encode(c);
  const Var z = c.output();
  const Clause c_x_hat = longest_falsified_clause(x_hat);
  CnfFormula g(static_cast<int>(xs.size()), VarRole::Input);
  for (Var v : xs) g.set_name(v, c.var_name(v));
  CnfFormula g_and_anchor = g;
  g_and_anchor.add_clause(c_x_hat);

  const std::size_t target_len = cfg.clause_target_len.value_or(xs.size());
  const std::uint64_t iteration_cap =
      xs.size() >= 62 ? UINT64_MAX : (1ull << xs.size());
  std::uint64_t new_clauses = 0;
  Clause break_clause;

  for (;;) {
    st.iterations++;
    if (st.iterations > iteration_cap)
      throw std::logic_error("exclusion loop exceeded the input-space bound");

    auto x = find_sat_assign(g_and_anchor);
    st.sat_calls++;
    if (!x) return finish(false, std::nullopt, SimExclExit::InputsExhausted);

    Clause clause = gen_falsif_clause(*x, x_hat, target_len);
    const bool skip_local =
        !cfg.use_local_prover || (cfg.noise_injection && rng.next_bool());
    SingleClauseVerdict v =
        solve_pqe_single_clause(clause, f_cur, z, &c, cfg.local_limits,
                                cfg.pqe_budget, skip_local);
    st.sat_calls++;
    st.conflicts += v.budget_spent;
    if (v.status == SingleClauseStatus::Unknown) {
      // Fail-soft: the shortened clause stays unproven. Retrying with the
      // full-length clause of x keeps the loop progressing, since that
      // projection is decided by propagation over the fixed input values.
      st.pqe_retries++;
      clause = longest_falsified_clause(*x);
      v = solve_pqe_single_clause(clause, f_cur, z, nullptr, cfg.local_limits,
                                  Budget::unlimited(), true);
      st.sat_calls++;
      st.conflicts += v.budget_spent;
    }

    const bool accepted = v.status == SingleClauseStatus::Empty;
    if (accepted) {
      if (v.tier == ProofTier::Local)
        st.tier1_proofs++;
      else
        st.tier2_proofs++;
      f_cur.add_clause(clause);
      g.add_clause(clause);
      g_and_anchor.add_clause(clause);
      st.clauses_accepted++;
      new_clauses++;
    }
    if (cfg.observer) {
      SimExclStep step;
      step.iteration = st.iterations;
      step.sampled = &*x;
      step.clause = &clause;
      step.verdict = v.status;
      step.tier = v.tier;
      step.accepted = accepted;
      step.f_cur = &f_cur;
      step.g = &g;
      cfg.observer(step);
    }
    if (!accepted) {
      break_clause = std::move(clause);
      break;
    }

    if (new_clauses > cfg.threshold &&
        (cfg.mode == SimExclMode::WithSatChecks ||
         cfg.mode == SimExclMode::WithSimRuns || cfg.mode == SimExclMode::Both)) {
      new_clauses = 0;
      if (cfg.mode == SimExclMode::WithSatChecks || cfg.mode == SimExclMode::Both) {
        bool decided = false, buggy = false;
        auto cex = periodic_sat_check(f_cur, z, ctx, decided, buggy);
        if (decided)
          return finish(buggy, std::move(cex), SimExclExit::PeriodicSat);
      }
      if (cfg.mode == SimExclMode::WithSimRuns || cfg.mode == SimExclMode::Both) {
        if (auto cex = periodic_sim_run(g, ctx))
          return finish(true, std::move(cex), SimExclExit::PeriodicSim);
      }
    }
  }

  // The projection produced the output clause: decide whether the inputs
  // excluded by the breaking clause contained a counterexample or the clause
  // was noise.
  SatOutcome out = check_excluded_is_real(break_clause, f_cur, z, &g);
  st.sat_calls++;
  st.conflicts += out.conflicts();
  if (out.is_unsat())
    return finish(false, std::nullopt, SimExclExit::BreakNoiseFree);
  return finish(true, out.model().restricted_to(xs), SimExclExit::BreakRealBug);
}

}  // namespace crr
