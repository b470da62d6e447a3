#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <utility>

namespace qdigest {

/// Exact multiset of readings, value -> frequency. Zero frequencies are
/// never stored.
class FrequencyVector {
 public:
  FrequencyVector() = default;
  FrequencyVector(std::initializer_list<std::pair<const std::uint64_t, std::uint64_t>> init);

  static FrequencyVector from_readings(std::span<const std::uint64_t> readings);

  void add(std::uint64_t value, std::uint64_t frequency = 1);

  std::uint64_t total() const noexcept { return total_; }
  bool empty() const noexcept { return total_ == 0; }
  std::uint64_t frequency(std::uint64_t value) const;
  std::size_t distinct() const noexcept { return freq_.size(); }

  /// Largest stored value, 0 when empty.
  std::uint64_t max_value() const noexcept { return freq_.empty() ? 0 : freq_.rbegin()->first; }
  std::uint64_t min_value() const noexcept { return freq_.empty() ? 0 : freq_.begin()->first; }

  const std::map<std::uint64_t, std::uint64_t>& entries() const noexcept { return freq_; }

  friend bool operator==(const FrequencyVector&, const FrequencyVector&) = default;

 private:
  std::map<std::uint64_t, std::uint64_t> freq_;
  std::uint64_t total_ = 0;
};

}  // namespace qdigest
