#pragma once

#include <bit>
#include <cstdint>

namespace qdigest {

// Nodes of the conceptual tree are numbered level by level: root = 1,
// children of i are 2i and 2i+1, leaves sigma..2sigma-1 hold values
// 1..sigma left to right.

struct ValueRange {
  std::uint64_t min;
  std::uint64_t max;

  std::uint64_t width() const noexcept { return max - min + 1; }
  bool contains(std::uint64_t v) const noexcept { return min <= v && v <= max; }
  friend bool operator==(const ValueRange&, const ValueRange&) = default;
};

/// Depth of a node; the root is level 0, leaves are level log2(sigma).
constexpr unsigned node_level(std::uint64_t id) noexcept {
  return static_cast<unsigned>(std::bit_width(id)) - 1;
}

constexpr std::uint64_t parent_id(std::uint64_t id) noexcept { return id >> 1; }
constexpr std::uint64_t sibling_id(std::uint64_t id) noexcept { return id ^ 1; }
constexpr std::uint64_t left_child_id(std::uint64_t id) noexcept { return id << 1; }

constexpr bool is_leaf_id(std::uint64_t id, std::uint64_t sigma) noexcept { return id >= sigma; }

/// Value range covered by node `id`. Throws DomainError unless
/// 1 <= id <= 2*sigma - 1 and sigma is a power of two.
ValueRange node_range(std::uint64_t id, std::uint64_t sigma);

/// Leaf holding `value`. Throws DomainError unless 1 <= value <= sigma.
std::uint64_t leaf_id(std::uint64_t value, std::uint64_t sigma);

}  // namespace qdigest
