#include "qdigest/oracle.hpp"

#include <cmath>
#include <string>

#include "qdigest/error.hpp"

namespace qdigest::oracle {

std::uint64_t exact_rank(const FrequencyVector& f, std::uint64_t x) {
  std::uint64_t rank = 0;
  for (const auto& [value, freq] : f.entries()) {
    if (value >= x) break;
    rank += freq;
  }
  return rank;
}

std::uint64_t exact_rank_inclusive(const FrequencyVector& f, std::uint64_t x) {
  std::uint64_t rank = 0;
  for (const auto& [value, freq] : f.entries()) {
    if (value > x) break;
    rank += freq;
  }
  return rank;
}

std::uint64_t target_position(double q, std::uint64_t n) {
  return static_cast<std::uint64_t>(std::ceil(q * static_cast<double>(n)));
}

std::uint64_t exact_quantile(const FrequencyVector& f, double q) {
  if (f.empty()) throw DomainError("quantile of an empty multiset");
  if (!(q > 0.0 && q <= 1.0)) throw DomainError("quantile fraction must lie in (0, 1], got " + std::to_string(q));
  const std::uint64_t position = target_position(q, f.total());
  std::uint64_t seen = 0;
  for (const auto& [value, freq] : f.entries()) {
    seen += freq;
    if (seen >= position) return value;
  }
  return f.max_value();
}

std::set<std::uint64_t> exact_frequent(const FrequencyVector& f, double s) {
  std::set<std::uint64_t> out;
  const double cutoff = s * static_cast<double>(f.total());
  for (const auto& [value, freq] : f.entries())
    if (static_cast<double>(freq) > cutoff) out.insert(value);
  return out;
}

std::uint64_t exact_range(const FrequencyVector& f, std::uint64_t low, std::uint64_t high) {
  std::uint64_t count = 0;
  for (const auto& [value, freq] : f.entries())
    if (value >= low && value <= high) count += freq;
  return count;
}

std::uint64_t quantile_rank_error(const FrequencyVector& f, double q, std::uint64_t answer) {
  const std::uint64_t target = target_position(q, f.total());
  const std::uint64_t first = exact_rank(f, answer) + 1;
  const std::uint64_t last = exact_rank_inclusive(f, answer);
  if (first > last) return first > target ? first - target : target - last;
  if (target < first) return first - target;
  if (target > last) return target - last;
  return 0;
}

}  // namespace qdigest::oracle
