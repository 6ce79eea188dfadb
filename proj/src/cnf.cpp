#include "crr/cnf.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace crr {

namespace {

// Sorts and deduplicates; returns false for tautologies.
bool normalize(std::vector<Lit>& lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (std::size_t i = 1; i < lits.size(); ++i)
    if (lits[i].var() == lits[i - 1].var()) return false;
  return true;
}

}  // namespace

Clause::Clause(std::vector<Lit> lits) : lits_(std::move(lits)) {
  if (!normalize(lits_))
    throw std::invalid_argument("tautological clause rejected");
}

std::optional<Clause> Clause::try_make(std::vector<Lit> lits) {
  if (!normalize(lits)) return std::nullopt;
  Clause c;
  c.lits_ = std::move(lits);
  return c;
}

bool Clause::contains_var(Var v) const {
  for (Lit l : lits_)
    if (l.var() == v) return true;
  return false;
}

bool Clause::satisfied_by(const Assignment& a) const {
  for (Lit l : lits_)
    if (l.satisfied_by(a.value(l.var()))) return true;
  return false;
}

std::vector<Var> Clause::vars() const {
  std::vector<Var> vs;
  vs.reserve(lits_.size());
  for (Lit l : lits_) vs.push_back(l.var());
  return vs;
}

std::string Clause::to_string(const std::vector<std::string>* names) const {
  std::string s = "(";
  bool first = true;
  for (Lit l : lits_) {
    if (!first) s += " v ";
    first = false;
    if (l.negated()) s += "~";
    if (names && static_cast<std::size_t>(l.var()) < names->size() &&
        !(*names)[static_cast<std::size_t>(l.var())].empty())
      s += (*names)[static_cast<std::size_t>(l.var())];
    else
      s += "v" + std::to_string(l.var());
  }
  s += ")";
  return s;
}

const char* to_string(VarRole role) {
  switch (role) {
    case VarRole::Input: return "input";
    case VarRole::Intermediate: return "intermediate";
    case VarRole::Output: return "output";
    case VarRole::Aux: return "aux";
  }
  return "?";
}

std::optional<VarRole> var_role_from_string(std::string_view s) {
  if (s == "input") return VarRole::Input;
  if (s == "intermediate") return VarRole::Intermediate;
  if (s == "output") return VarRole::Output;
  if (s == "aux") return VarRole::Aux;
  return std::nullopt;
}

CnfFormula::CnfFormula(int num_vars, VarRole default_role)
    : roles_(static_cast<std::size_t>(num_vars), default_role),
      names_(static_cast<std::size_t>(num_vars)) {}

void CnfFormula::ensure_num_vars(int n, VarRole default_role) {
  if (n > num_vars()) {
    roles_.resize(static_cast<std::size_t>(n), default_role);
    names_.resize(static_cast<std::size_t>(n));
  }
}

void CnfFormula::add_clause(Clause c) {
  for (Lit l : c.lits())
    if (l.var() < 0 || l.var() >= num_vars())
      throw std::invalid_argument("clause variable outside formula universe");
  clauses_.push_back(std::move(c));
}

std::vector<Var> CnfFormula::vars_with_role(VarRole role) const {
  std::vector<Var> vs;
  for (Var v = 0; v < num_vars(); ++v)
    if (roles_[static_cast<std::size_t>(v)] == role) vs.push_back(v);
  return vs;
}

const std::string& CnfFormula::name(Var v) const {
  return names_.at(static_cast<std::size_t>(v));
}

void CnfFormula::set_name(Var v, std::string name) {
  names_.at(static_cast<std::size_t>(v)) = std::move(name);
}

bool CnfFormula::satisfied_by(const Assignment& a) const {
  for (const Clause& c : clauses_)
    if (!c.satisfied_by(a)) return false;
  return true;
}

CnfFormula conjoin(const CnfFormula& a, const CnfFormula& b) {
  CnfFormula out(std::max(a.num_vars(), b.num_vars()));
  for (Var v = 0; v < out.num_vars(); ++v) {
    VarRole ra = v < a.num_vars() ? a.role(v) : VarRole::Aux;
    VarRole rb = v < b.num_vars() ? b.role(v) : VarRole::Aux;
    if (ra != VarRole::Aux && rb != VarRole::Aux && ra != rb)
      throw std::invalid_argument("conflicting variable roles in conjunction");
    out.set_role(v, ra != VarRole::Aux ? ra : rb);
    const std::string& na = v < a.num_vars() ? a.name(v) : std::string();
    out.set_name(v, !na.empty() ? na : (v < b.num_vars() ? b.name(v) : std::string()));
  }
  for (const Clause& c : a.clauses()) out.add_clause(c);
  for (const Clause& c : b.clauses()) out.add_clause(c);
  return out;
}

CnfFormula remap_vars(const CnfFormula& f, std::span<const Var> map,
                      int new_num_vars) {
  if (static_cast<int>(map.size()) < f.num_vars())
    throw std::invalid_argument("remap table does not cover the formula");
  CnfFormula out(new_num_vars);
  for (Var v = 0; v < f.num_vars(); ++v) {
    Var w = map[static_cast<std::size_t>(v)];
    if (w < 0 || w >= new_num_vars)
      throw std::invalid_argument("remap target outside new universe");
    out.set_role(w, f.role(v));
    out.set_name(w, f.name(v));
  }
  for (const Clause& c : f.clauses()) {
    std::vector<Lit> lits;
    for (Lit l : c.lits())
      lits.emplace_back(map[static_cast<std::size_t>(l.var())], l.negated());
    out.add_clause(Clause(std::move(lits)));
  }
  return out;
}

namespace {

void encode_gate(CnfFormula& f, const Gate& g) {
  const Lit o = pos(g.out);
  auto add = [&f](std::vector<Lit> lits) { f.add_clause(Clause(std::move(lits))); };
  switch (g.kind) {
    case GateKind::And: {
      const Lit a = pos(g.fanins[0]), b = pos(g.fanins[1]);
      add({~a, ~b, o});
      add({a, ~o});
      add({b, ~o});
      break;
    }
    case GateKind::Or: {
      const Lit a = pos(g.fanins[0]), b = pos(g.fanins[1]);
      add({a, b, ~o});
      add({~a, o});
      add({~b, o});
      break;
    }
    case GateKind::Nand: {
      const Lit a = pos(g.fanins[0]), b = pos(g.fanins[1]);
      add({~a, ~b, ~o});
      add({a, o});
      add({b, o});
      break;
    }
    case GateKind::Nor: {
      const Lit a = pos(g.fanins[0]), b = pos(g.fanins[1]);
      add({a, b, o});
      add({~a, ~o});
      add({~b, ~o});
      break;
    }
    case GateKind::Xor: {
      const Lit a = pos(g.fanins[0]), b = pos(g.fanins[1]);
      add({~o, a, b});
      add({~o, ~a, ~b});
      add({o, ~a, b});
      add({o, a, ~b});
      break;
    }
    case GateKind::Xnor: {
      const Lit a = pos(g.fanins[0]), b = pos(g.fanins[1]);
      add({o, a, b});
      add({o, ~a, ~b});
      add({~o, ~a, b});
      add({~o, a, ~b});
      break;
    }
    case GateKind::Not: {
      const Lit a = pos(g.fanins[0]);
      add({a, o});
      add({~a, ~o});
      break;
    }
    case GateKind::Buf: {
      const Lit a = pos(g.fanins[0]);
      add({~a, o});
      add({a, ~o});
      break;
    }
    case GateKind::Const0:
      add({~o});
      break;
    case GateKind::Const1:
      add({o});
      break;
  }
}

}  // namespace

CnfFormula tseitin_encode(const Circuit& c0) {
  Circuit c = decompose_to_binary(c0);
  CnfFormula f(c.num_vars(), VarRole::Intermediate);
  for (Var v : c.inputs()) f.set_role(v, VarRole::Input);
  for (Var z : c.outputs()) f.set_role(z, VarRole::Output);
  for (Var v = 0; v < c.num_vars(); ++v) f.set_name(v, c.var_name(v));
  for (const Gate& g : c.gates()) encode_gate(f, g);
  return f;
}

CnfFormula build_eq(std::span<const Var> xs1, std::span<const Var> xs2,
                    int num_vars) {
  if (xs1.size() != xs2.size())
    throw std::invalid_argument("equality constraint: length mismatch");
  if (xs1.empty())
    throw std::invalid_argument("equality constraint: empty variable lists");
  std::set<Var> seen;
  for (Var v : xs1) seen.insert(v);
  for (Var v : xs2)
    if (!seen.insert(v).second)
      throw std::invalid_argument("equality constraint: overlapping variables");
  Var max_var = 0;
  for (Var v : seen) max_var = std::max(max_var, v);
  if (num_vars < 0) num_vars = max_var + 1;
  CnfFormula f(num_vars);
  for (Var v : seen) f.set_role(v, VarRole::Input);
  for (std::size_t i = 0; i < xs1.size(); ++i) {
    f.add_clause(Clause({neg(xs1[i]), pos(xs2[i])}));
    f.add_clause(Clause({pos(xs1[i]), neg(xs2[i])}));
  }
  return f;
}

Clause longest_falsified_clause(const Assignment& a) {
  if (a.empty())
    throw std::invalid_argument("cannot build a clause from an empty assignment");
  std::vector<Lit> lits;
  lits.reserve(a.size());
  for (Var v : a.vars()) lits.emplace_back(v, a.value(v));
  return Clause(std::move(lits));
}

Clause gen_falsif_clause(const Assignment& x, const Assignment& x_hat,
                         std::size_t target_len) {
  if (x.vars() != x_hat.vars())
    throw std::invalid_argument("assignments range over different variables");
  if (x == x_hat)
    throw std::invalid_argument("cannot exclude the protected input");

  Clause full = longest_falsified_clause(x);
  const std::size_t target = std::max<std::size_t>(1, std::min(target_len, full.size()));

  std::vector<Lit> same, diff;  // partition by whether x and x_hat agree
  for (Lit l : full.lits()) {
    if (x.value(l.var()) == x_hat.value(l.var()))
      same.push_back(l);
    else
      diff.push_back(l);
  }
  std::vector<Lit> kept(diff);
  std::size_t len = same.size() + diff.size();
  std::size_t si = 0;
  while (len > target && si < same.size()) ++si, --len;  // drop agreeing first
  for (std::size_t k = si; k < same.size(); ++k) kept.push_back(same[k]);
  // Then drop differing literals, always keeping one.
  std::size_t di = 0;
  while (len > target && kept.size() - di > same.size() - si + 1) ++di, --len;
  kept.erase(kept.begin(), kept.begin() + static_cast<std::ptrdiff_t>(di));
  return Clause(std::move(kept));
}

CnfFormula miter(const CnfFormula& f1, const CnfFormula& f2) {
  auto z1s = f1.vars_with_role(VarRole::Output);
  auto z2s = f2.vars_with_role(VarRole::Output);
  if (z1s.size() != 1 || z2s.size() != 1)
    throw std::invalid_argument("miter requires two single-output encodings");
  const Var z1 = z1s[0], z2 = z2s[0];
  const int shared = std::min(f1.num_vars(), f2.num_vars());
  for (Var v = 0; v < shared; ++v) {
    VarRole r1 = f1.role(v), r2 = f2.role(v);
    if (r1 != VarRole::Aux && r2 != VarRole::Aux &&
        (r1 != VarRole::Input || r2 != VarRole::Input))
      throw std::invalid_argument(
          "variable-space collision outside the shared inputs");
  }
  CnfFormula out = conjoin(f1, f2);
  out.add_clause(Clause({pos(z1), pos(z2)}));
  out.add_clause(Clause({neg(z1), neg(z2)}));
  return out;
}

}  // namespace crr
