#pragma once

#include <optional>
#include <set>
#include <vector>

#include "crr/circuit.hpp"
#include "crr/cnf.hpp"

namespace crr {

// Set of complete output assignments, ordered canonically.
using OutputSet = std::set<Assignment>;

// A set of complete input assignments, given either extensionally or as the
// satisfiers/falsifiers of a CNF constraint over the inputs.
class InputSet {
 public:
  static InputSet all();
  static InputSet explicit_set(std::vector<Assignment> inputs);
  static InputSet satisfiers(CnfFormula g);
  static InputSet falsifiers(CnfFormula g);

  bool contains(const Assignment& x) const;

 private:
  enum class Kind { All, Explicit, Satisfiers, Falsifiers };
  Kind kind_ = Kind::All;
  std::set<Assignment> inputs_;
  CnfFormula constraint_;
};

struct RangeOracleOptions {
  int max_inputs = 20;  // enumeration bound on |X|
};

// Exact range by exhaustive enumeration and simulation, in lexicographic
// input order. The ground truth everything else is checked against.
OutputSet range(const Circuit& c, const InputSet& a,
                const RangeOracleOptions& opts = {});

// Rng(N, A) \ Rng(N, A \ B): the outputs that disappear when the inputs of B
// are excluded. A disjoint A and B yields an empty reduction (with a warning
// flag, since the exclusion removed nothing).
struct ReductionResult {
  OutputSet excluded;
  bool disjoint_warning = false;
};
ReductionResult range_reduction(const Circuit& c, const InputSet& a,
                                const InputSet& b,
                                const RangeOracleOptions& opts = {});

// Checks a candidate excluded-output set against the exact reduction: valid
// when it covers the true reduction and every extra element is outside the
// range under A.
struct ApproxCheck {
  bool valid = true;
  std::optional<Assignment> violation;
};
ApproxCheck check_approx_solution(const Circuit& c, const InputSet& a,
                                  const InputSet& b, const OutputSet& q_star,
                                  const RangeOracleOptions& opts = {});

// All assignments over `vars` (enumerated lexicographically) that falsify the
// formula; used to turn a clause set over outputs into an output set.
OutputSet formula_falsifiers(const CnfFormula& f, std::span<const Var> vars);

}  // namespace crr
