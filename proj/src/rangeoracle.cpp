#include "crr/rangeoracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace crr {

InputSet InputSet::all() { return InputSet{}; }

InputSet InputSet::explicit_set(std::vector<Assignment> inputs) {
  InputSet s;
  s.kind_ = Kind::Explicit;
  s.inputs_.insert(inputs.begin(), inputs.end());
  return s;
}

InputSet InputSet::satisfiers(CnfFormula g) {
  InputSet s;
  s.kind_ = Kind::Satisfiers;
  s.constraint_ = std::move(g);
  return s;
}

InputSet InputSet::falsifiers(CnfFormula g) {
  InputSet s;
  s.kind_ = Kind::Falsifiers;
  s.constraint_ = std::move(g);
  return s;
}

bool InputSet::contains(const Assignment& x) const {
  switch (kind_) {
    case Kind::All: return true;
    case Kind::Explicit: return inputs_.count(x) > 0;
    case Kind::Satisfiers: return constraint_.satisfied_by(x);
    case Kind::Falsifiers: return !constraint_.satisfied_by(x);
  }
  return false;
}

namespace {

void check_bound(const Circuit& c, const RangeOracleOptions& opts) {
  if (static_cast<int>(c.inputs().size()) > opts.max_inputs)
    throw std::invalid_argument("input space too large for exhaustive range (" +
                                std::to_string(c.inputs().size()) + " > " +
                                std::to_string(opts.max_inputs) + " inputs)");
}

}  // namespace

OutputSet range(const Circuit& c, const InputSet& a, const RangeOracleOptions& opts) {
  check_bound(c, opts);
  const auto xs = c.inputs();
  const std::uint64_t total = 1ull << xs.size();
  OutputSet out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Assignment x = Assignment::from_index(xs, idx);
    if (a.contains(x)) out.insert(simulate(c, x));
  }
  return out;
}

ReductionResult range_reduction(const Circuit& c, const InputSet& a,
                                const InputSet& b, const RangeOracleOptions& opts) {
  check_bound(c, opts);
  const auto xs = c.inputs();
  const std::uint64_t total = 1ull << xs.size();
  OutputSet rng_a, rng_a_minus_b;
  bool intersects = false;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Assignment x = Assignment::from_index(xs, idx);
    const bool in_a = a.contains(x);
    if (!in_a) continue;
    Assignment z = simulate(c, x);
    rng_a.insert(z);
    if (b.contains(x))
      intersects = true;
    else
      rng_a_minus_b.insert(z);
  }
  ReductionResult res;
  res.disjoint_warning = !intersects;
  std::set_difference(rng_a.begin(), rng_a.end(), rng_a_minus_b.begin(),
                      rng_a_minus_b.end(),
                      std::inserter(res.excluded, res.excluded.begin()));
  return res;
}

ApproxCheck check_approx_solution(const Circuit& c, const InputSet& a,
                                  const InputSet& b, const OutputSet& q_star,
                                  const RangeOracleOptions& opts) {
  const OutputSet q = range_reduction(c, a, b, opts).excluded;
  const OutputSet rng_a = range(c, a, opts);
  ApproxCheck res;
  for (const Assignment& z : q) {
    if (!q_star.count(z)) {
      res.valid = false;
      res.violation = z;
      return res;
    }
  }
  for (const Assignment& z : q_star) {
    if (!q.count(z) && rng_a.count(z)) {
      res.valid = false;
      res.violation = z;
      return res;
    }
  }
  return res;
}

OutputSet formula_falsifiers(const CnfFormula& f, std::span<const Var> vars) {
  if (vars.size() > 25)
    throw std::invalid_argument("falsifier enumeration space too large");
  OutputSet out;
  const std::uint64_t total = 1ull << vars.size();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Assignment v = Assignment::from_index(vars, idx);
    if (!f.satisfied_by(v)) out.insert(v);
  }
  return out;
}

}  // namespace crr
