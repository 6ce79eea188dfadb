#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "crr/circuit.hpp"
#include "crr/cnf.hpp"
#include "crr/sat.hpp"

namespace crr {

// Take the constraint g out of the scope of the quantifiers in
// exists(quantified). [g and f]: find g_star over the free variables with
//   g_star and exists(W)[f]  ==  exists(W)[g and f].
// The free variables are the circuit outputs in every use here, so g_star
// describes which outputs survive the input exclusion.
struct PqeTask {
  const CnfFormula* g = nullptr;
  const CnfFormula* f = nullptr;
  std::vector<Var> quantified;
  std::vector<Var> free_vars;
};

enum class ClauseProvenance : std::uint8_t { SemanticMust, PossiblyNoisy };
enum class PqeStatus : std::uint8_t { Exact, Approximate };

struct PqeStats {
  std::uint64_t sat_calls = 0;
  std::uint64_t conflicts = 0;
};

struct PqeResult {
  CnfFormula g_star;  // clauses over the free variables only
  std::vector<ClauseProvenance> provenance;  // parallel to g_star clauses
  PqeStatus status = PqeStatus::Exact;
  PqeStats stats;
};

// Test-only knob: emits additional clauses falsified solely by out-of-range
// outputs, which is exactly the noise a weaker engine is allowed to produce.
struct NoiseInjection {
  bool enabled = false;
  double probability = 0.5;
  std::uint64_t seed = 0;
};

struct PqeOptions {
  int max_free = 8;
  NoiseInjection noise;
};

// Complete engine: semantic projection onto the free variables. For every
// complete free assignment v, two satisfiability checks classify v as kept
// (a model of g and f extends it), excluded-but-producible (a must clause is
// emitted), or out of range (unconstrained).
PqeResult take_out(const PqeTask& task, const PqeOptions& opts = {});

// Structural bounds for the local redundancy prover.
struct LocalRedundancyLimits {
  int max_clause_vars = 6;  // |D|
  int max_env = 4;          // |E|
  int max_cut = 6;          // |S|
};

// Sound, incomplete redundancy check for an input clause c against a circuit
// encoding: true only when the fanout cone of the clause variables is closed
// off by a small cut whose producible value set is unchanged when the inputs
// falsifying c are dropped. A true answer certifies that excluding those
// inputs preserves the range of the encoded circuit, including any
// input-only constraint clauses already present in f.
bool is_locally_redundant(const Clause& c, const CnfFormula& f,
                          const Circuit& circuit,
                          const LocalRedundancyLimits& limits = {});

enum class SingleClauseStatus : std::uint8_t { Empty, NotZ, Unknown };
enum class ProofTier : std::uint8_t { Local, Semantic };

struct SingleClauseVerdict {
  SingleClauseStatus status = SingleClauseStatus::Unknown;
  ProofTier tier = ProofTier::Semantic;
  std::uint64_t budget_spent = 0;
};

// Single-clause projection for a single-output encoding: the result of taking
// an input clause c out of exists(W)[c and f] is either empty (c is
// redundant, the exclusion preserves the range) or the unit clause (not z).
// Tier 1 is the local prover (skipped when `circuit` is null or `skip_local`
// is set); tier 2 decides SAT(c and f and z). A budgeted tier-2 run that
// exhausts its budget reports Unknown and the caller keeps the clause
// unproven.
SingleClauseVerdict solve_pqe_single_clause(
    const Clause& c, const CnfFormula& f, Var z,
    const Circuit* circuit = nullptr,
    const LocalRedundancyLimits& limits = {},
    Budget budget = Budget::unlimited(), bool skip_local = false);

enum class NoiseClass : std::uint8_t { NoiseFree, Noisy };

// A clause over the free (output) variables is noise-free when every output
// falsifying it is in the range of the circuit.
NoiseClass classify_noise(const Clause& clause, const CnfFormula& f,
                          int max_free = 16);

}  // namespace crr
