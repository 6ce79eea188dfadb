#include "crr/assignment.hpp"

#include <algorithm>
#include <stdexcept>

namespace crr {

Assignment Assignment::from_index(std::span<const Var> vars_in_order,
                                  std::uint64_t index) {
  Assignment a;
  const std::size_t k = vars_in_order.size();
  for (std::size_t j = 0; j < k; ++j) {
    const bool bit = (index >> (k - 1 - j)) & 1u;
    a.set(vars_in_order[j], bit);
  }
  return a;
}

void Assignment::set(Var v, bool value) {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  const auto pos = static_cast<std::size_t>(it - vars_.begin());
  if (it != vars_.end() && *it == v) {
    vals_[pos] = value ? 1 : 0;
    return;
  }
  vars_.insert(it, v);
  vals_.insert(vals_.begin() + static_cast<std::ptrdiff_t>(pos),
               value ? 1 : 0);
}

bool Assignment::contains(Var v) const {
  return std::binary_search(vars_.begin(), vars_.end(), v);
}

std::optional<bool> Assignment::get(Var v) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  if (it == vars_.end() || *it != v) return std::nullopt;
  return vals_[static_cast<std::size_t>(it - vars_.begin())] != 0;
}

bool Assignment::value(Var v) const {
  auto b = get(v);
  if (!b) throw std::out_of_range("assignment has no value for variable");
  return *b;
}

bool Assignment::covers(std::span<const Var> vs) const {
  for (Var v : vs)
    if (!contains(v)) return false;
  return true;
}

bool Assignment::complete_over(std::span<const Var> vs) const {
  return vs.size() == vars_.size() && covers(vs);
}

Assignment Assignment::restricted_to(std::span<const Var> vs) const {
  Assignment out;
  for (Var v : vs) {
    auto b = get(v);
    if (b) out.set(v, *b);
  }
  return out;
}

std::string Assignment::bits(std::span<const Var> vs) const {
  std::string s;
  s.reserve(vs.size());
  for (Var v : vs) s.push_back(value(v) ? '1' : '0');
  return s;
}

}  // namespace crr
