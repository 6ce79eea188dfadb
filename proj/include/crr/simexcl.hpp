#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "crr/circuit.hpp"
#include "crr/cnf.hpp"
#include "crr/pqe.hpp"
#include "crr/rng.hpp"
#include "crr/sat.hpp"

namespace crr {

enum class SimExclMode : std::uint8_t { Basic, WithSatChecks, WithSimRuns, Both };
const char* to_string(SimExclMode mode);

enum class SimExclExit : std::uint8_t {
  ImmediateHit,     // the very first simulated input already misbehaves
  InputsExhausted,  // every input but the protected one has been excluded
  BreakNoiseFree,   // the derived output clause turned out to be noise
  BreakRealBug,     // the excluded inputs contained a counterexample
  PeriodicSat,      // a periodic budgeted satisfiability check decided the run
  PeriodicSim,      // a periodic simulation batch hit a counterexample
};
const char* to_string(SimExclExit exit_path);

struct SimExclStats {
  std::uint64_t iterations = 0;
  std::uint64_t clauses_accepted = 0;
  std::uint64_t tier1_proofs = 0;
  std::uint64_t tier2_proofs = 0;
  std::uint64_t pqe_retries = 0;       // budget failures retried at full length
  std::uint64_t sat_checks = 0;        // periodic budgeted checks issued
  std::uint64_t sim_tests = 0;         // periodic simulation tests run
  std::uint64_t sat_calls = 0;
  std::uint64_t conflicts = 0;
  SimExclExit exit_path = SimExclExit::ImmediateHit;
  double wall_seconds = 0.0;
};

struct SimExclOutcome {
  bool buggy = false;
  std::optional<Assignment> counterexample;  // simulates to output 1
  SimExclStats stats;
};

// Observer hook fired after each loop iteration; carries enough state for
// trace logging and for invariant checks in tests.
struct SimExclStep {
  std::uint64_t iteration = 0;
  const Assignment* sampled = nullptr;
  const Clause* clause = nullptr;
  SingleClauseStatus verdict = SingleClauseStatus::Unknown;
  ProofTier tier = ProofTier::Semantic;
  bool accepted = false;
  const CnfFormula* f_cur = nullptr;
  const CnfFormula* g = nullptr;
};

struct SimExclConfig {
  std::uint64_t seed = 0;
  std::optional<std::size_t> clause_target_len;  // default: |X|, no shortening
  std::uint64_t threshold = 32;      // accepted clauses between periodic actions
  Budget sat_budget = Budget::conflicts(10000);
  std::uint64_t sim_tries = 64;
  SimExclMode mode = SimExclMode::Basic;
  bool noise_injection = false;      // test-only: randomly bypass the local tier
  Budget pqe_budget = Budget::unlimited();
  LocalRedundancyLimits local_limits{};
  bool use_local_prover = true;
  std::function<void(const SimExclStep&)> observer;
};

// Uniformly random complete assignment to the given variables.
Assignment gen_inp(std::span<const Var> xs, Rng& rng);

// Decides whether the inputs excluded by c contain a real counterexample:
// SAT(not-c and f_cur and z), where not-c contributes one unit clause per
// literal. Previously accepted exclusion clauses are expected to already be
// inside f_cur; when `g` is supplied this is asserted.
SatOutcome check_excluded_is_real(const Clause& c, const CnfFormula& f_cur, Var z,
                                  const CnfFormula* g = nullptr);

// Verification by range reduction: repeatedly exclude inputs whose exclusion
// provably preserves the range, until either everything but a protected
// reference input is excluded (correct) or the output clause materializes and
// is disambiguated into noise versus a real counterexample.
SimExclOutcome sim_by_excl(const Circuit& c, const SimExclConfig& cfg = {});

}  // namespace crr
