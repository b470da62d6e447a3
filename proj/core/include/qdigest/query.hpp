#pragma once

#include <cstdint>
#include <vector>

#include "qdigest/digest.hpp"

namespace qdigest {

struct QuantileAnswer {
  std::uint64_t value;
  std::uint64_t error_budget;  ///< ceil(log2(sigma) / k * n)
};

struct RankAnswer {
  std::uint64_t rank;
  std::uint64_t error_budget;
};

struct FrequentValue {
  std::uint64_t value;
  std::uint64_t count;  ///< stored leaf count, a lower bound on the true frequency

  friend bool operator==(const FrequentValue&, const FrequentValue&) = default;
};

/// Digest-specific error certificate: the heaviest root-to-leaf path,
/// excluding the leaf's own count, over n.
struct ConfidenceReport {
  std::uint64_t path_weight;
  std::uint64_t total;

  double theta() const noexcept {
    return total == 0 ? 0.0 : static_cast<double>(path_weight) / static_cast<double>(total);
  }
};

/// Scans buckets by increasing right endpoint (narrower first on ties) and
/// returns the right endpoint of the first bucket at which the running
/// count reaches q*n. The answer never undershoots: at least q*n readings
/// are <= value.
/// Throws DomainError on an empty digest or q outside (0, 1).
QuantileAnswer quantile(const QDigest& q, double fraction);

/// Sum of the counts of buckets lying entirely below x. Undercounts the
/// true rank (readings < x) by at most log2(sigma)/k * n.
/// Throws DomainError unless 1 <= x <= declared sigma + 1; x = sigma + 1
/// yields n.
RankAnswer inverse_quantile(const QDigest& q, std::uint64_t x);

/// Readings in the closed range [low, high], as
/// inverse_quantile(high + 1) - inverse_quantile(low).
RankAnswer range_count(const QDigest& q, std::uint64_t low, std::uint64_t high);

/// Unit-width buckets whose count exceeds (s - eps) * n, ascending by value.
/// Throws DomainError on an empty digest or s outside (0, 1).
std::vector<FrequentValue> consensus(const QDigest& q, double s);

ConfidenceReport confidence_factor(const QDigest& q);

}  // namespace qdigest
