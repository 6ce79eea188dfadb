#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "crr/circuit.hpp"
#include "crr/cnf.hpp"
#include "crr/pqe.hpp"
#include "crr/sat.hpp"

namespace crr {

enum class ConstClass : std::uint8_t { Const0, Const1, NonConst };

struct EcStats {
  std::uint64_t sat_calls = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t pqe_sat_calls = 0;
  double wall_seconds = 0.0;
};

struct EcVerdict {
  enum class Kind : std::uint8_t { Equivalent, Inequivalent, Unknown };
  Kind kind = Kind::Unknown;
  // Complete assignment to the left circuit's inputs on which the two
  // circuits produce different outputs (present iff Inequivalent).
  std::optional<Assignment> counterexample;
  EcStats stats;

  bool equivalent() const { return kind == Kind::Equivalent; }
  bool inequivalent() const { return kind == Kind::Inequivalent; }
};

// Input correspondence between the two circuits: by name when the input name
// sets coincide, by declaration order otherwise. Throws on arity mismatch.
std::vector<std::pair<Var, Var>> pair_inputs(const Circuit& n1, const Circuit& n2);

// Constant classification of a single-output circuit by two unlimited
// satisfiability checks.
ConstClass is_constant(const Circuit& c);

// Shared-input miter encoding of the two circuits (n2's non-input variables
// are relocated above n1's universe).
CnfFormula build_miter(const Circuit& n1, const Circuit& n2);

// Baseline equivalence check: one satisfiability call on the miter.
EcVerdict ec_cdcl(const Circuit& n1, const Circuit& n2);

struct EcCrrOptions {
  NoiseInjection noise;  // test-only, forwarded to the projection engine
};

// Equivalence check via range reduction: compose the circuits over disjoint
// inputs, take the input-equality constraint out of the quantified encoding,
// and inspect the projected formula at the two disagreement points. Mixed
// verdicts fall back to constant classification, and every inequivalence is
// backed by a concrete counterexample revalidated by simulation.
EcVerdict ec_crr(const Circuit& n1, const Circuit& n2,
                 const EcCrrOptions& opts = {});

// The projected two-output formula H used by ec_crr, exposed for inspection:
// returns take_out(EQ, F' ^ F'') together with the composed circuit.
struct CrrProjection {
  Composition composition;
  PqeResult projection;
};
CrrProjection ec_crr_projection(const Circuit& n1, const Circuit& n2,
                                const EcCrrOptions& opts = {});

}  // namespace crr
