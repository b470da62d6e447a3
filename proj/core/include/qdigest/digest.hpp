#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qdigest/config.hpp"
#include "qdigest/frequency.hpp"

namespace qdigest {

struct Bucket {
  std::uint64_t id;
  std::uint64_t count;

  friend bool operator==(const Bucket&, const Bucket&) = default;
};

/// A q-digest: a sparse set of counted buckets drawn from the complete
/// binary tree over [1, sigma].
///
/// Immutable once built. Buckets are kept sorted by ascending node id,
/// every stored count is >= 1 and the counts sum to `total()`.
class QDigest {
 public:
  /// The empty digest (n = 0).
  explicit QDigest(DigestConfig config) : config_(config) {}

  /// A single reading: the trivial digest with one leaf.
  static QDigest singleton(DigestConfig config, std::uint64_t value);

  /// Places every frequency at its leaf and compresses once.
  static QDigest from_frequencies(const FrequencyVector& freq, DigestConfig config);

  /// Adopts the given buckets verbatim, without compressing. Ids must be
  /// in [1, 2*sigma - 1]; duplicates are summed and zero counts dropped.
  /// Used for hand-built digests and by the decoder.
  static QDigest from_buckets(DigestConfig config, std::span<const Bucket> buckets);

  const DigestConfig& config() const noexcept { return config_; }
  std::uint64_t total() const noexcept { return total_; }
  std::size_t size() const noexcept { return buckets_.size(); }
  bool empty() const noexcept { return total_ == 0; }
  std::span<const Bucket> buckets() const noexcept { return buckets_; }

  /// Stored count of node `id`, 0 if absent.
  std::uint64_t count(std::uint64_t id) const noexcept;

  friend bool operator==(const QDigest&, const QDigest&) = default;

 private:
  QDigest(DigestConfig config, std::vector<Bucket> buckets, std::uint64_t total)
      : config_(config), buckets_(std::move(buckets)), total_(total) {}

  friend QDigest compress(const QDigest&);
  friend QDigest merge(std::span<const QDigest>);

  DigestConfig config_;
  std::vector<Bucket> buckets_;
  std::uint64_t total_ = 0;
};

/// Bottom-up compression with threshold floor(n/k). For each parent, in
/// descending level and ascending id, the children are folded into it when
/// count(parent) + count(left) + count(right) < floor(n/k). The pass is
/// repeated until nothing folds, so the result is a fixpoint.
QDigest compress(const QDigest& q);

/// Union of the bucket maps (counts of identical ids added), then
/// compress with threshold floor((n1 + n2) / k). Throws DomainError on
/// mismatched configurations, std::overflow_error if a count overflows.
QDigest merge(const QDigest& a, const QDigest& b);

/// Many-way merge: one union over all inputs followed by one compress.
/// Throws DomainError if `parts` is empty or configurations differ.
QDigest merge(std::span<const QDigest> parts);

enum class Property {
  Conservation,     ///< counts do not sum to n
  ZeroCount,        ///< a stored bucket has count 0
  InternalTooHeavy, ///< non-leaf, non-root bucket above floor(n/k)
  FamilyTooLight,   ///< count(v) + count(parent) + count(sibling) < floor(n/k)
  SizeBound,        ///< more than 3k buckets while floor(n/k) >= 1
};

struct Violation {
  std::uint64_t id;  ///< offending node, 0 for digest-wide properties
  Property property;
  std::string message;
};

/// Checks the post-compression invariants. Empty result iff all hold.
std::vector<Violation> validate(const QDigest& q);

const char* to_string(Property p) noexcept;

}  // namespace qdigest
