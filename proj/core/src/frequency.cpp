#include "qdigest/frequency.hpp"

#include <stdexcept>

namespace qdigest {

FrequencyVector::FrequencyVector(
    std::initializer_list<std::pair<const std::uint64_t, std::uint64_t>> init) {
  for (const auto& [value, freq] : init) add(value, freq);
}

FrequencyVector FrequencyVector::from_readings(std::span<const std::uint64_t> readings) {
  FrequencyVector f;
  for (auto v : readings) f.add(v);
  return f;
}

void FrequencyVector::add(std::uint64_t value, std::uint64_t frequency) {
  if (frequency == 0) return;
  if (total_ + frequency < total_) throw std::overflow_error("frequency total overflows 64 bits");
  freq_[value] += frequency;
  total_ += frequency;
}

std::uint64_t FrequencyVector::frequency(std::uint64_t value) const {
  auto it = freq_.find(value);
  return it == freq_.end() ? 0 : it->second;
}

}  // namespace qdigest
