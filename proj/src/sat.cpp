#include "crr/sat.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace crr {

SatOutcome SatOutcome::sat(Assignment model, std::uint64_t conflicts) {
  SatOutcome o;
  o.kind_ = Kind::Sat;
  o.model_ = std::move(model);
  o.conflicts_ = conflicts;
  return o;
}

SatOutcome SatOutcome::unsat(std::uint64_t conflicts) {
  SatOutcome o;
  o.kind_ = Kind::Unsat;
  o.conflicts_ = conflicts;
  return o;
}

SatOutcome SatOutcome::unknown(std::uint64_t budget_spent) {
  SatOutcome o;
  o.kind_ = Kind::Unknown;
  o.conflicts_ = budget_spent;
  return o;
}

const Assignment& SatOutcome::model() const {
  if (kind_ != Kind::Sat) throw std::logic_error("no model: outcome is not Sat");
  return model_;
}

Solver::Solver(const CnfFormula& f) : Solver(f, Options{}) {}

Solver::Solver(const CnfFormula& f, Options options)
    : nvars_(f.num_vars()), formula_(&f) {
  watches_.resize(static_cast<std::size_t>(2 * nvars_));
  assign_.assign(static_cast<std::size_t>(nvars_), -1);
  level_.assign(static_cast<std::size_t>(nvars_), 0);
  reason_.assign(static_cast<std::size_t>(nvars_), -1);
  activity_.assign(static_cast<std::size_t>(nvars_), 0.0);
  seen_.assign(static_cast<std::size_t>(nvars_), 0);
  polarity_.assign(static_cast<std::size_t>(nvars_), 0);
  if (options.random_polarity) {
    std::mt19937_64 rng(options.seed);
    for (auto& p : polarity_) p = static_cast<std::uint8_t>((rng() >> 17) & 1u);
  }
  for (const Clause& c : f.clauses())
    if (!add_input_clause(c)) {
      ok_ = false;
      break;
    }
}

int Solver::value_of(Lit p) const {
  std::int8_t a = assign_[static_cast<std::size_t>(p.var())];
  if (a < 0) return -1;
  return p.satisfied_by(a == 1) ? 1 : 0;
}

bool Solver::enqueue(Lit p, int reason) {
  int v = value_of(p);
  if (v == 0) return false;
  if (v == 1) return true;
  const auto idx = static_cast<std::size_t>(p.var());
  assign_[idx] = p.negated() ? 0 : 1;
  level_[idx] = static_cast<int>(trail_lim_.size());
  reason_[idx] = reason;
  trail_.push_back(p);
  return true;
}

void Solver::attach(int clause_idx) {
  const auto& c = clauses_[static_cast<std::size_t>(clause_idx)];
  watches_[static_cast<std::size_t>(c[0].code())].push_back({clause_idx, c[1]});
  watches_[static_cast<std::size_t>(c[1].code())].push_back({clause_idx, c[0]});
}

bool Solver::add_input_clause(const Clause& c) {
  if (c.empty()) return false;
  for (Lit l : c.lits())
    if (l.var() < 0 || l.var() >= nvars_)
      throw std::invalid_argument("clause literal outside solver universe");
  if (c.size() == 1) return enqueue(c.lits()[0], -1);
  clauses_.emplace_back(c.lits().begin(), c.lits().end());
  attach(static_cast<int>(clauses_.size()) - 1);
  return true;
}

int Solver::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];
    const Lit false_lit = ~p;
    auto& ws = watches_[static_cast<std::size_t>(false_lit.code())];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      const Watcher w = ws[i];
      if (value_of(w.blocker) == 1) {
        ws[j++] = ws[i++];
        continue;
      }
      auto& c = clauses_[static_cast<std::size_t>(w.clause)];
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      const Lit first = c[0];
      if (value_of(first) == 1) {
        ws[j++] = {w.clause, first};
        ++i;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value_of(c[k]) != 0) {
          std::swap(c[1], c[k]);
          watches_[static_cast<std::size_t>(c[1].code())].push_back({w.clause, first});
          moved = true;
          break;
        }
      }
      if (moved) {
        ++i;  // watcher migrated to the new literal's list
        continue;
      }
      ws[j++] = {w.clause, first};
      ++i;
      if (value_of(first) == 0) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return w.clause;
      }
      enqueue(first, w.clause);
    }
    ws.resize(j);
  }
  return -1;
}

void Solver::bump(Var v) {
  auto& a = activity_[static_cast<std::size_t>(v)];
  a += var_inc_;
  if (a > 1e100) {
    for (auto& x : activity_) x *= 1e-100;
    var_inc_ *= 1e-100;
  }
}

void Solver::decay() { var_inc_ /= 0.95; }

void Solver::analyze(int confl, std::vector<Lit>& learnt, int& backtrack_level) {
  learnt.clear();
  learnt.push_back(Lit());  // slot for the asserting literal
  const int cur_level = static_cast<int>(trail_lim_.size());
  int counter = 0;
  Lit p;
  bool have_p = false;
  std::size_t idx = trail_.size();

  for (;;) {
    const auto& c = clauses_[static_cast<std::size_t>(confl)];
    for (std::size_t j = have_p ? 1 : 0; j < c.size(); ++j) {
      const Lit q = c[j];
      const auto v = static_cast<std::size_t>(q.var());
      if (!seen_[v] && level_[v] > 0) {
        seen_[v] = 1;
        bump(q.var());
        if (level_[v] >= cur_level)
          ++counter;
        else
          learnt.push_back(q);
      }
    }
    do {
      --idx;
    } while (!seen_[static_cast<std::size_t>(trail_[idx].var())]);
    p = trail_[idx];
    have_p = true;
    seen_[static_cast<std::size_t>(p.var())] = 0;
    if (--counter == 0) break;
    confl = reason_[static_cast<std::size_t>(p.var())];
  }
  learnt[0] = ~p;

  if (learnt.size() == 1) {
    backtrack_level = 0;
  } else {
    std::size_t max_i = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k)
      if (level_[static_cast<std::size_t>(learnt[k].var())] >
          level_[static_cast<std::size_t>(learnt[max_i].var())])
        max_i = k;
    std::swap(learnt[1], learnt[max_i]);
    backtrack_level = level_[static_cast<std::size_t>(learnt[1].var())];
  }
  for (Lit l : learnt) seen_[static_cast<std::size_t>(l.var())] = 0;
}

void Solver::cancel_until(int target_level) {
  if (static_cast<int>(trail_lim_.size()) <= target_level) return;
  const std::size_t low = trail_lim_[static_cast<std::size_t>(target_level)];
  for (std::size_t k = trail_.size(); k-- > low;) {
    const auto v = static_cast<std::size_t>(trail_[k].var());
    polarity_[v] = static_cast<std::uint8_t>(assign_[v]);
    assign_[v] = -1;
    reason_[v] = -1;
  }
  trail_.resize(low);
  trail_lim_.resize(static_cast<std::size_t>(target_level));
  qhead_ = trail_.size();
}

Var Solver::pick_branch_var() const {
  Var best = kNoVar;
  double best_act = -1.0;
  for (Var v = 0; v < nvars_; ++v) {
    if (assign_[static_cast<std::size_t>(v)] >= 0) continue;
    const double a = activity_[static_cast<std::size_t>(v)];
    if (a > best_act) {
      best_act = a;
      best = v;
    }
  }
  return best;
}

Assignment Solver::extract_model() const {
  Assignment m;
  for (Var v = 0; v < nvars_; ++v)
    m.set(v, assign_[static_cast<std::size_t>(v)] == 1);
  return m;
}

void Solver::verify_model(const Assignment& model) const {
  for (const Clause& c : formula_->clauses())
    if (!c.satisfied_by(model))
      throw std::logic_error("internal error: model fails clause re-check");
}

SatOutcome Solver::solve(std::span<const Lit> assumptions, Budget budget) {
  for (Lit a : assumptions)
    if (a.var() < 0 || a.var() >= nvars_)
      throw std::invalid_argument("assumption literal outside solver universe");

  std::uint64_t spent = 0;
  if (!ok_) return SatOutcome::unsat(spent);
  cancel_until(0);

  std::vector<Lit> learnt;
  for (;;) {
    const int confl = propagate();
    if (confl >= 0) {
      if (trail_lim_.empty()) {
        ok_ = false;
        return SatOutcome::unsat(spent);
      }
      if (!budget.is_unlimited() && spent >= *budget.max_conflicts) {
        cancel_until(0);
        return SatOutcome::unknown(spent);
      }
      ++spent;
      ++total_conflicts_;
      int bt = 0;
      analyze(confl, learnt, bt);
      cancel_until(bt);
      if (learnt.size() == 1) {
        if (!enqueue(learnt[0], -1)) {
          ok_ = false;
          return SatOutcome::unsat(spent);
        }
      } else {
        clauses_.push_back(learnt);
        const int idx = static_cast<int>(clauses_.size()) - 1;
        attach(idx);
        enqueue(learnt[0], idx);
      }
      decay();
      continue;
    }

    if (trail_.size() == static_cast<std::size_t>(nvars_)) {
      Assignment model = extract_model();
      verify_model(model);
      cancel_until(0);
      return SatOutcome::sat(std::move(model), spent);
    }

    Lit next;
    bool have_next = false;
    while (trail_lim_.size() < assumptions.size()) {
      const Lit p = assumptions[trail_lim_.size()];
      const int v = value_of(p);
      if (v == 1) {
        trail_lim_.push_back(trail_.size());  // placeholder level
      } else if (v == 0) {
        cancel_until(0);
        return SatOutcome::unsat(spent);
      } else {
        next = p;
        have_next = true;
        break;
      }
    }
    if (!have_next) {
      const Var x = pick_branch_var();
      next = Lit(x, polarity_[static_cast<std::size_t>(x)] == 0);
    }
    trail_lim_.push_back(trail_.size());
    enqueue(next, -1);
  }
}

SatOutcome solve(const CnfFormula& f, std::span<const Lit> assumptions,
                 Budget budget, Solver::Options options) {
  Solver s(f, options);
  return s.solve(assumptions, budget);
}

std::optional<Assignment> find_sat_assign(const CnfFormula& f) {
  SatOutcome out = solve(f);
  if (out.is_unsat()) return std::nullopt;
  return out.model();
}

std::optional<Assignment> sample_sat_assign(const CnfFormula& f, std::uint64_t seed) {
  SatOutcome out = solve(f, {}, Budget::unlimited(),
                         Solver::Options{.random_polarity = true, .seed = seed});
  if (out.is_unsat()) return std::nullopt;
  return out.model();
}

}  // namespace crr
