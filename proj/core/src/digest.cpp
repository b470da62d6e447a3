#include "qdigest/digest.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "qdigest/error.hpp"
#include "qdigest/node.hpp"

namespace qdigest {
namespace {

using BucketMap = std::map<std::uint64_t, std::uint64_t>;

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a + b < a) throw std::overflow_error("q-digest count overflows 64 bits");
  return a + b;
}

std::uint64_t lookup(const BucketMap& m, std::uint64_t id) {
  auto it = m.find(id);
  return it == m.end() ? 0 : it->second;
}

// One bottom-up sweep. Returns true if any family was folded.
bool compress_pass(BucketMap& m, unsigned log_sigma, std::uint64_t threshold) {
  bool folded = false;
  std::vector<std::uint64_t> parents;
  for (unsigned level = log_sigma; level >= 1; --level) {
    const std::uint64_t lo = std::uint64_t{1} << level;
    const std::uint64_t hi = lo << 1;
    parents.clear();
    for (auto it = m.lower_bound(lo); it != m.end() && it->first < hi; ++it) {
      const std::uint64_t p = parent_id(it->first);
      if (parents.empty() || parents.back() != p) parents.push_back(p);
    }
    for (const std::uint64_t p : parents) {
      const std::uint64_t left = left_child_id(p);
      const std::uint64_t delta = lookup(m, p) + lookup(m, left) + lookup(m, left + 1);
      if (delta < threshold) {
        m.erase(left);
        m.erase(left + 1);
        m[p] = delta;
        folded = true;
      }
    }
  }
  return folded;
}

std::vector<Bucket> to_vector(const BucketMap& m) {
  std::vector<Bucket> out;
  out.reserve(m.size());
  for (const auto& [id, count] : m) out.push_back({id, count});
  return out;
}

BucketMap to_map(std::span<const Bucket> buckets) {
  BucketMap m;
  for (const auto& b : buckets) m.emplace_hint(m.end(), b.id, b.count);
  return m;
}

void compress_map(BucketMap& m, const DigestConfig& cfg, std::uint64_t n) {
  const std::uint64_t threshold = cfg.threshold(n);
  if (threshold == 0) return;
  while (compress_pass(m, cfg.log_sigma(), threshold)) {
  }
}

}  // namespace

QDigest QDigest::singleton(DigestConfig config, std::uint64_t value) {
  if (value == 0 || value > config.declared_sigma())
    throw DomainError("reading " + std::to_string(value) + " outside [1, " +
                      std::to_string(config.declared_sigma()) + "]");
  return QDigest(config, {{leaf_id(value, config.sigma()), 1}}, 1);
}

QDigest QDigest::from_frequencies(const FrequencyVector& freq, DigestConfig config) {
  BucketMap m;
  for (const auto& [value, f] : freq.entries()) {
    if (value == 0 || value > config.declared_sigma())
      throw DomainError("value " + std::to_string(value) + " outside [1, " +
                        std::to_string(config.declared_sigma()) + "]");
    m.emplace_hint(m.end(), leaf_id(value, config.sigma()), f);
  }
  compress_map(m, config, freq.total());
  return QDigest(config, to_vector(m), freq.total());
}

QDigest QDigest::from_buckets(DigestConfig config, std::span<const Bucket> buckets) {
  BucketMap m;
  std::uint64_t total = 0;
  const std::uint64_t max_id = 2 * config.sigma() - 1;
  for (const auto& b : buckets) {
    if (b.id == 0 || b.id > max_id)
      throw DomainError("node id " + std::to_string(b.id) + " outside [1, " + std::to_string(max_id) + "]");
    if (b.count == 0) continue;
    m[b.id] = checked_add(m[b.id], b.count);
    total = checked_add(total, b.count);
  }
  return QDigest(config, to_vector(m), total);
}

std::uint64_t QDigest::count(std::uint64_t id) const noexcept {
  auto it = std::lower_bound(buckets_.begin(), buckets_.end(), id,
                             [](const Bucket& b, std::uint64_t key) { return b.id < key; });
  return (it != buckets_.end() && it->id == id) ? it->count : 0;
}

QDigest compress(const QDigest& q) {
  BucketMap m = to_map(q.buckets_);
  compress_map(m, q.config_, q.total_);
  return QDigest(q.config_, to_vector(m), q.total_);
}

QDigest merge(const QDigest& a, const QDigest& b) {
  const QDigest parts[] = {a, b};
  return merge(parts);
}

QDigest merge(std::span<const QDigest> parts) {
  if (parts.empty()) throw DomainError("merge of zero digests");
  const DigestConfig& cfg = parts.front().config_;
  BucketMap m;
  std::uint64_t total = 0;
  for (const QDigest& part : parts) {
    if (!(part.config_ == cfg)) throw DomainError("merging digests with different sigma or k");
    total = checked_add(total, part.total_);
    for (const auto& bucket : part.buckets_) {
      auto& slot = m[bucket.id];
      slot = checked_add(slot, bucket.count);
    }
  }
  compress_map(m, cfg, total);
  return QDigest(cfg, to_vector(m), total);
}

std::vector<Violation> validate(const QDigest& q) {
  std::vector<Violation> out;
  const auto& cfg = q.config();
  const std::uint64_t threshold = cfg.threshold(q.total());

  std::uint64_t sum = 0;
  bool overflow = false;
  for (const auto& b : q.buckets()) {
    if (sum + b.count < sum) overflow = true;
    sum += b.count;
  }
  if (overflow || sum != q.total())
    out.push_back({0, Property::Conservation,
                   "bucket counts sum to " + std::to_string(sum) + ", n is " + std::to_string(q.total())});

  for (const auto& b : q.buckets()) {
    const std::string node = "node " + std::to_string(b.id);
    if (b.count == 0) out.push_back({b.id, Property::ZeroCount, node + " stored with count 0"});
    if (b.id == 1) continue;
    if (!is_leaf_id(b.id, cfg.sigma()) && b.count > threshold)
      out.push_back({b.id, Property::InternalTooHeavy,
                     node + " count " + std::to_string(b.count) + " exceeds floor(n/k) = " +
                         std::to_string(threshold)});
    const std::uint64_t family = b.count + q.count(parent_id(b.id)) + q.count(sibling_id(b.id));
    if (family < threshold)
      out.push_back({b.id, Property::FamilyTooLight,
                     node + " family sum " + std::to_string(family) + " below floor(n/k) = " +
                         std::to_string(threshold)});
  }

  if (threshold >= 1 && q.size() > 3 * cfg.k())
    out.push_back({0, Property::SizeBound,
                   std::to_string(q.size()) + " buckets exceed 3k = " + std::to_string(3 * cfg.k())});
  return out;
}

const char* to_string(Property p) noexcept {
  switch (p) {
    case Property::Conservation: return "conservation";
    case Property::ZeroCount: return "zero-count";
    case Property::InternalTooHeavy: return "internal-too-heavy";
    case Property::FamilyTooLight: return "family-too-light";
    case Property::SizeBound: return "size-bound";
  }
  return "unknown";
}

}  // namespace qdigest
