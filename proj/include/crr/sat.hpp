#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "crr/cnf.hpp"

namespace crr {

// Search effort limit, counted in conflicts.
struct Budget {
  std::optional<std::uint64_t> max_conflicts;  // nullopt = unlimited

  static Budget unlimited() { return {}; }
  static Budget conflicts(std::uint64_t n) { return {n}; }
  bool is_unlimited() const { return !max_conflicts.has_value(); }
};

class SatOutcome {
 public:
  enum class Kind { Sat, Unsat, Unknown };

  static SatOutcome sat(Assignment model, std::uint64_t conflicts);
  static SatOutcome unsat(std::uint64_t conflicts);
  static SatOutcome unknown(std::uint64_t budget_spent);

  bool is_sat() const { return kind_ == Kind::Sat; }
  bool is_unsat() const { return kind_ == Kind::Unsat; }
  bool is_unknown() const { return kind_ == Kind::Unknown; }
  Kind kind() const { return kind_; }

  const Assignment& model() const;        // valid only for Sat
  std::uint64_t budget_spent() const { return conflicts_; }
  std::uint64_t conflicts() const { return conflicts_; }

 private:
  Kind kind_ = Kind::Unknown;
  Assignment model_;
  std::uint64_t conflicts_ = 0;
};

// Conflict-driven clause-learning decision procedure: two-literal watching,
// first-UIP learning, phase saving, no restarts (keeps runs deterministic
// for a fixed formula, assumption list, and options). Sat models are always
// complete over the formula universe and re-checked against the clause list
// before being returned.
class Solver {
 public:
  struct Options {
    // When set, initial decision polarities are drawn from `seed` instead of
    // defaulting to false. Used for randomized model sampling.
    bool random_polarity = false;
    std::uint64_t seed = 0;
  };

  explicit Solver(const CnfFormula& f);
  Solver(const CnfFormula& f, Options options);

  // May be called repeatedly with different assumptions; learned clauses are
  // kept between calls.
  SatOutcome solve(std::span<const Lit> assumptions = {},
                   Budget budget = Budget::unlimited());

  std::uint64_t total_conflicts() const { return total_conflicts_; }

 private:
  struct Watcher {
    int clause;
    Lit blocker;
  };

  int value_of(Lit p) const;  // 1 true, 0 false, -1 unassigned
  bool enqueue(Lit p, int reason);
  int propagate();  // conflict clause index or -1
  void analyze(int confl, std::vector<Lit>& learnt, int& backtrack_level);
  void cancel_until(int level);
  Var pick_branch_var() const;
  void bump(Var v);
  void decay();
  void attach(int clause_idx);
  bool add_input_clause(const Clause& c);
  Assignment extract_model() const;
  void verify_model(const Assignment& model) const;

  int nvars_ = 0;
  const CnfFormula* formula_ = nullptr;
  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<Watcher>> watches_;  // indexed by literal code
  std::vector<std::int8_t> assign_;            // per var: -1/0/1
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<double> activity_;
  double var_inc_ = 1.0;
  std::vector<std::uint8_t> seen_;
  std::vector<std::uint8_t> polarity_;
  bool ok_ = true;
  std::uint64_t total_conflicts_ = 0;
};

SatOutcome solve(const CnfFormula& f, std::span<const Lit> assumptions = {},
                 Budget budget = Budget::unlimited(),
                 Solver::Options options = {});

// Satisfying assignment of a formula over input variables only, or nullopt
// when unsatisfiable. Unassigned variables are completed by the solver's
// deterministic default-polarity rule.
std::optional<Assignment> find_sat_assign(const CnfFormula& f);

// Like find_sat_assign but with decision polarities randomized from `seed`,
// to draw varied models of the same formula.
std::optional<Assignment> sample_sat_assign(const CnfFormula& f, std::uint64_t seed);

}  // namespace crr
