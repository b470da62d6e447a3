#include "qdigest/node.hpp"

#include <string>

#include "qdigest/error.hpp"

namespace qdigest {

ValueRange node_range(std::uint64_t id, std::uint64_t sigma) {
  if (!std::has_single_bit(sigma)) throw DomainError("sigma must be a power of two");
  if (id == 0 || id > 2 * sigma - 1)
    throw DomainError("node id " + std::to_string(id) + " outside [1, " +
                      std::to_string(2 * sigma - 1) + "]");
  const unsigned level = node_level(id);
  const std::uint64_t width = sigma >> level;
  const std::uint64_t position = id - (std::uint64_t{1} << level);
  const std::uint64_t min = position * width + 1;
  return {min, min + width - 1};
}

std::uint64_t leaf_id(std::uint64_t value, std::uint64_t sigma) {
  if (value == 0 || value > sigma)
    throw DomainError("value " + std::to_string(value) + " outside [1, " + std::to_string(sigma) + "]");
  return sigma + value - 1;
}

}  // namespace qdigest
