#include "qdigest/query.hpp"

#include <algorithm>
#include <string>

#include "qdigest/error.hpp"
#include "qdigest/node.hpp"

namespace qdigest {
namespace {

struct Ranged {
  ValueRange range;
  std::uint64_t count;
};

// Buckets by increasing right endpoint, narrower ranges first on ties.
// This is a post-order walk of the stored nodes.
std::vector<Ranged> post_order(const QDigest& q) {
  std::vector<Ranged> list;
  list.reserve(q.size());
  for (const auto& b : q.buckets()) list.push_back({node_range(b.id, q.config().sigma()), b.count});
  std::sort(list.begin(), list.end(), [](const Ranged& a, const Ranged& b) {
    if (a.range.max != b.range.max) return a.range.max < b.range.max;
    return a.range.width() < b.range.width();
  });
  return list;
}

void require_nonempty(const QDigest& q) {
  if (q.empty()) throw DomainError("query on an empty digest");
}

void require_fraction(double f, const char* what) {
  if (!(f > 0.0 && f < 1.0)) throw DomainError(std::string(what) + " must lie in (0, 1), got " + std::to_string(f));
}

}  // namespace

QuantileAnswer quantile(const QDigest& q, double fraction) {
  require_nonempty(q);
  require_fraction(fraction, "quantile fraction");
  const double target = fraction * static_cast<double>(q.total());
  const auto list = post_order(q);
  std::uint64_t running = 0;
  for (const auto& node : list) {
    running += node.count;
    if (static_cast<double>(running) >= target) {
      return {std::min(node.range.max, q.config().declared_sigma()), q.config().error_budget(q.total())};
    }
  }
  // Unreachable for fraction < 1: the running sum ends at n.
  return {std::min(list.back().range.max, q.config().declared_sigma()), q.config().error_budget(q.total())};
}

RankAnswer inverse_quantile(const QDigest& q, std::uint64_t x) {
  const auto& cfg = q.config();
  if (x == 0 || x > cfg.declared_sigma() + 1)
    throw DomainError("value " + std::to_string(x) + " outside [1, " + std::to_string(cfg.declared_sigma() + 1) + "]");
  const std::uint64_t budget = cfg.error_budget(q.total());
  if (x > cfg.declared_sigma()) return {q.total(), budget};
  std::uint64_t rank = 0;
  for (const auto& b : q.buckets())
    if (node_range(b.id, cfg.sigma()).max < x) rank += b.count;
  return {rank, budget};
}

RankAnswer range_count(const QDigest& q, std::uint64_t low, std::uint64_t high) {
  if (low > high)
    throw DomainError("range low " + std::to_string(low) + " above high " + std::to_string(high));
  if (low == 0 || high > q.config().declared_sigma())
    throw DomainError("range [" + std::to_string(low) + ", " + std::to_string(high) + "] outside [1, " +
                      std::to_string(q.config().declared_sigma()) + "]");
  const auto upper = inverse_quantile(q, high + 1);
  const auto lower = inverse_quantile(q, low);
  return {upper.rank - lower.rank, 2 * upper.error_budget};
}

std::vector<FrequentValue> consensus(const QDigest& q, double s) {
  require_nonempty(q);
  require_fraction(s, "consensus support");
  const auto& cfg = q.config();
  const double cutoff = (s - cfg.epsilon()) * static_cast<double>(q.total());
  std::vector<FrequentValue> out;
  for (const auto& b : q.buckets()) {
    if (!is_leaf_id(b.id, cfg.sigma())) continue;
    if (static_cast<double>(b.count) > cutoff) out.push_back({b.id - cfg.sigma() + 1, b.count});
  }
  return out;
}

ConfidenceReport confidence_factor(const QDigest& q) {
  const std::uint64_t sigma = q.config().sigma();
  std::uint64_t heaviest = 0;
  for (const auto& b : q.buckets()) {
    std::uint64_t weight = is_leaf_id(b.id, sigma) ? 0 : b.count;
    for (std::uint64_t a = parent_id(b.id); a >= 1; a = parent_id(a)) weight += q.count(a);
    heaviest = std::max(heaviest, weight);
  }
  return {heaviest, q.total()};
}

}  // namespace qdigest
