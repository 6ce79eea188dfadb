#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crr/assignment.hpp"
#include "crr/circuit.hpp"

namespace crr {

class Lit {
 public:
  Lit() = default;
  Lit(Var v, bool negated) : code_(v * 2 + (negated ? 1 : 0)) {}

  Var var() const { return code_ >> 1; }
  bool negated() const { return code_ & 1; }
  std::int32_t code() const { return code_; }

  Lit operator~() const {
    Lit l;
    l.code_ = code_ ^ 1;
    return l;
  }
  bool satisfied_by(bool value) const { return value != negated(); }
  // The unique value of var() that falsifies this literal.
  bool falsifying_value() const { return negated(); }

  friend bool operator==(Lit, Lit) = default;
  friend auto operator<=>(Lit, Lit) = default;

 private:
  std::int32_t code_ = 0;
};

inline Lit pos(Var v) { return Lit(v, false); }
inline Lit neg(Var v) { return Lit(v, true); }

// Sorted, duplicate-free disjunction of literals. Construction rejects
// tautologies (a variable in both polarities).
class Clause {
 public:
  Clause() = default;  // the empty clause
  explicit Clause(std::vector<Lit> lits);
  static std::optional<Clause> try_make(std::vector<Lit> lits);

  std::span<const Lit> lits() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  bool contains_var(Var v) const;

  // Both evaluators require every clause variable to be assigned.
  bool satisfied_by(const Assignment& a) const;
  bool falsified_by(const Assignment& a) const { return !satisfied_by(a); }

  std::vector<Var> vars() const;
  std::string to_string(const std::vector<std::string>* names = nullptr) const;

  friend bool operator==(const Clause&, const Clause&) = default;
  friend auto operator<=>(const Clause&, const Clause&) = default;

 private:
  std::vector<Lit> lits_;
};

enum class VarRole : std::uint8_t { Input, Intermediate, Output, Aux };
const char* to_string(VarRole role);
std::optional<VarRole> var_role_from_string(std::string_view s);

// Clause database over a dense variable universe 0..num_vars-1 with a role
// per variable and optional names (used by DIMACS export).
class CnfFormula {
 public:
  CnfFormula() = default;
  explicit CnfFormula(int num_vars, VarRole default_role = VarRole::Aux);

  int num_vars() const { return static_cast<int>(roles_.size()); }
  void ensure_num_vars(int n, VarRole default_role = VarRole::Aux);

  void add_clause(Clause c);
  std::span<const Clause> clauses() const { return clauses_; }
  std::size_t num_clauses() const { return clauses_.size(); }

  VarRole role(Var v) const { return roles_.at(static_cast<std::size_t>(v)); }
  void set_role(Var v, VarRole role) { roles_.at(static_cast<std::size_t>(v)) = role; }
  std::vector<Var> vars_with_role(VarRole role) const;

  const std::string& name(Var v) const;
  void set_name(Var v, std::string name);

  bool satisfied_by(const Assignment& a) const;

 private:
  std::vector<Clause> clauses_;
  std::vector<VarRole> roles_;
  std::vector<std::string> names_;
};

// Conjunction over the merged universe. Non-Aux roles must agree where both
// sides constrain the same variable.
CnfFormula conjoin(const CnfFormula& a, const CnfFormula& b);

// Rewrites every variable v to map[v]; map entries must be distinct and
// cover the source universe.
CnfFormula remap_vars(const CnfFormula& f, std::span<const Var> map, int new_num_vars);

// Functional (Tseitin) encoding of the circuit: the models of the result,
// restricted to the circuit variables, are exactly the consistent executions.
// Gates with more than two fanins are decomposed to binary chains first; the
// helper variables are tagged Intermediate.
CnfFormula tseitin_encode(const Circuit& c);

// Pairwise equality constraint (xs1[i] == xs2[i]) as 2k binary clauses.
CnfFormula build_eq(std::span<const Var> xs1, std::span<const Var> xs2,
                    int num_vars = -1);

// One literal per assigned variable, each negating the assignment's value;
// the result is falsified exactly by `a`.
Clause longest_falsified_clause(const Assignment& a);

// Clause falsified by x and satisfied by x_hat, obtained from the longest
// falsified clause of x by greedily dropping literals down to target_len.
// Literals at positions where x and x_hat agree are dropped first, and at
// least one differing-position literal is always retained.
Clause gen_falsif_clause(const Assignment& x, const Assignment& x_hat,
                         std::size_t target_len);

// F' and F'' over shared inputs plus the two-clause output-inequality
// constraint; satisfiable exactly when the encoded circuits disagree.
CnfFormula miter(const CnfFormula& f1, const CnfFormula& f2);

}  // namespace crr
