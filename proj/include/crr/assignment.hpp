#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace crr {

using Var = std::int32_t;
inline constexpr Var kNoVar = -1;

// Partial or total mapping from variables to Boolean values. Variables are
// kept sorted, which gives assignments a canonical ordering usable as set
// keys and makes enumeration output reproducible.
class Assignment {
 public:
  Assignment() = default;

  // Builds the assignment with index `index` in lexicographic enumeration
  // order: vars_in_order[0] is the most significant bit, value 0 < 1.
  static Assignment from_index(std::span<const Var> vars_in_order,
                               std::uint64_t index);

  void set(Var v, bool value);
  bool contains(Var v) const;
  std::optional<bool> get(Var v) const;
  bool value(Var v) const;  // throws std::out_of_range if absent

  std::size_t size() const { return vars_.size(); }
  bool empty() const { return vars_.empty(); }
  const std::vector<Var>& vars() const { return vars_; }

  bool covers(std::span<const Var> vs) const;
  bool complete_over(std::span<const Var> vs) const;

  Assignment restricted_to(std::span<const Var> vs) const;

  // Bit string ("0101...") of the values in the given variable order.
  std::string bits(std::span<const Var> vs) const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;

 private:
  std::vector<Var> vars_;           // ascending
  std::vector<std::uint8_t> vals_;  // parallel to vars_
};

}  // namespace crr
