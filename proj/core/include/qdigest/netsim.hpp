#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qdigest/config.hpp"
#include "qdigest/digest.hpp"
#include "qdigest/frequency.hpp"

namespace qdigest::netsim {

struct Point {
  double x;
  double y;
};

/// Sensors scattered uniformly over a square of side `side`; two sensors
/// are neighbours when their distance is at most `radio_range`.
struct Topology {
  double side = 0;
  double radio_range = 0;
  std::uint64_t seed = 0;
  std::uint32_t regenerations = 0;  ///< disconnected placements discarded
  std::vector<Point> positions;
  std::vector<std::vector<std::uint32_t>> adjacency;  ///< ascending ids, symmetric

  std::size_t size() const noexcept { return positions.size(); }
};

/// Radio range giving the requested expected degree at a density.
double radio_range_for_degree(double density, double mean_degree);

/// Places n sensors in a square of side sqrt(n / density). Disconnected
/// placements are redrawn from the same stream until connected; the count
/// is kept in `regenerations`. Throws DomainError if density or range is
/// not positive, or n == 0.
Topology generate_topology(std::size_t n, double density, double radio_range, std::uint64_t seed,
                           std::uint32_t max_attempts = 100000);

/// Builds a topology from explicit positions (no connectivity requirement).
Topology make_topology(std::vector<Point> positions, double side, double radio_range);

/// Builds a topology from an explicit edge list, for tests.
Topology make_topology(std::size_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> edges);

bool is_connected(const Topology& t);

inline constexpr std::uint32_t kNoParent = UINT32_MAX;

struct RoutingTree {
  std::uint32_t root = 0;
  std::vector<std::uint32_t> parent;  ///< kNoParent for the root
  std::vector<std::uint32_t> level;   ///< hop count to the root
  std::vector<std::vector<std::uint32_t>> children;

  std::size_t size() const noexcept { return parent.size(); }
  std::uint32_t depth() const noexcept;
};

/// Breadth-first tree: every node's parent is its lowest-id neighbour one
/// hop closer to the root. Throws DomainError naming an unreachable node.
RoutingTree bfs_tree(const Topology& t, std::uint32_t root);

/// Exact width-1 histogram, the unaggregated baseline.
class ListSummary {
 public:
  struct Entry {
    std::uint64_t value;
    std::uint64_t count;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  ListSummary() = default;
  static ListSummary singleton(std::uint64_t value);

  void absorb(const ListSummary& other);

  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::uint64_t total() const noexcept;
  FrequencyVector to_frequencies() const;

 private:
  std::vector<Entry> entries_;  // strictly increasing values
};

enum class Scheme { QDigest, List };

const char* to_string(Scheme s) noexcept;

/// Bytes per (id, count) tuple when the network holds `n_total` readings:
/// ceil((ceil(log2(2 sigma)) + ceil(log2(n_total + 1))) / 8).
std::size_t tuple_bytes(const DigestConfig& cfg, std::uint64_t n_total) noexcept;

/// Compression factor for a message budget: floor(budget / tuple_bytes / 3).
/// Throws DomainError when the budget cannot hold three tuples.
std::uint64_t k_for_budget(std::uint64_t sigma, std::size_t budget_bytes, std::uint64_t n_total);

struct QuantileError {
  double q;
  std::uint64_t answer;
  std::uint64_t rank_error;  ///< oracle::quantile_rank_error
  double relative;           ///< rank_error / n
};

struct ExperimentReport {
  Scheme scheme = Scheme::QDigest;
  std::uint64_t readings = 0;               ///< n at the base station
  std::vector<std::uint64_t> node_bytes;    ///< bytes each node transmitted
  std::uint64_t max_message_bytes = 0;
  std::uint64_t total_bytes = 0;
  std::vector<QuantileError> quantile_errors;
  double theta = 0;                         ///< confidence factor at the base station
  std::optional<QDigest> root_digest;       ///< QDigest scheme only
  std::optional<ListSummary> root_list;     ///< List scheme only
};

/// In-network aggregation up the routing tree: every node merges its
/// children's summaries with its own reading and transmits the result to
/// its parent. The root is the base station and contributes no reading.
/// `readings` holds one value per node in [1, declared sigma] (the root's
/// entry is ignored); errors at each `quantiles` q are measured against
/// the exact multiset. Throws DomainError on a reading out of range.
ExperimentReport run_aggregation(const RoutingTree& tree, std::span<const std::uint64_t> readings,
                                 const DigestConfig& cfg, Scheme scheme,
                                 std::span<const double> quantiles = {});

struct ResidualPower {
  std::vector<double> per_node;  ///< indexed by node id
  std::vector<double> sorted;    ///< ascending, the empirical CDF support

  double min() const { return sorted.empty() ? 1.0 : sorted.front(); }
  /// Empirical p-quantile of the residual fraction, p in [0, 1].
  double percentile(double p) const;
};

/// P = 1 - bytes * cost_per_byte / initial, floored at 0.
/// Throws DomainError unless initial > 0.
ResidualPower residual_power(const ExperimentReport& report, double initial, double cost_per_byte);

}  // namespace qdigest::netsim
