#pragma once

#include <cstdint>
#include <set>

#include "qdigest/frequency.hpp"

// Exact reference answers by brute force over the full multiset.
namespace qdigest::oracle {

/// Readings strictly less than x.
std::uint64_t exact_rank(const FrequencyVector& f, std::uint64_t x);

/// Readings less than or equal to x.
std::uint64_t exact_rank_inclusive(const FrequencyVector& f, std::uint64_t x);

/// Value at 1-based position ceil(q*n) of the sorted multiset.
/// Throws DomainError on empty input or q outside (0, 1].
std::uint64_t exact_quantile(const FrequencyVector& f, double q);

/// Values whose frequency exceeds s*n.
std::set<std::uint64_t> exact_frequent(const FrequencyVector& f, double s);

/// Readings in [low, high].
std::uint64_t exact_range(const FrequencyVector& f, std::uint64_t low, std::uint64_t high);

/// Distance, in sorted positions, between the target position ceil(q*n)
/// and the nearest position `answer` occupies. Occurrences of x occupy
/// positions exact_rank(x)+1 .. exact_rank_inclusive(x); a value that does
/// not occur is treated as sitting just after exact_rank(x), so it is at
/// least one position off. The exact quantile has error 0.
std::uint64_t quantile_rank_error(const FrequencyVector& f, double q, std::uint64_t answer);

/// ceil(q*n), the 1-based target position of the q-quantile.
std::uint64_t target_position(double q, std::uint64_t n);

}  // namespace qdigest::oracle
