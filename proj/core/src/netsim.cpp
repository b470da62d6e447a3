#include "qdigest/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <string>
#include <unordered_map>

#include "qdigest/codec.hpp"
#include "qdigest/error.hpp"
#include "qdigest/oracle.hpp"
#include "qdigest/query.hpp"
#include "qdigest/random.hpp"

namespace qdigest::netsim {
namespace {

void build_adjacency(Topology& t) {
  const std::size_t n = t.positions.size();
  t.adjacency.assign(n, {});
  const double r = t.radio_range;
  const double r2 = r * r;
  // Bucket sensors into r x r cells; neighbours lie in the 3x3 block around a cell.
  const auto cells_per_side = static_cast<std::int64_t>(std::max(1.0, std::ceil(t.side / r)));
  auto cell_of = [&](double c) {
    return std::clamp(static_cast<std::int64_t>(c / r), std::int64_t{0}, cells_per_side - 1);
  };
  std::unordered_map<std::int64_t, std::vector<std::uint32_t>> grid;
  for (std::uint32_t i = 0; i < n; ++i)
    grid[cell_of(t.positions[i].x) * cells_per_side + cell_of(t.positions[i].y)].push_back(i);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto cx = cell_of(t.positions[i].x);
    const auto cy = cell_of(t.positions[i].y);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        const auto x = cx + dx, y = cy + dy;
        if (x < 0 || y < 0 || x >= cells_per_side || y >= cells_per_side) continue;
        auto it = grid.find(x * cells_per_side + y);
        if (it == grid.end()) continue;
        for (std::uint32_t j : it->second) {
          if (j == i) continue;
          const double ddx = t.positions[i].x - t.positions[j].x;
          const double ddy = t.positions[i].y - t.positions[j].y;
          if (ddx * ddx + ddy * ddy <= r2) t.adjacency[i].push_back(j);
        }
      }
    }
    std::sort(t.adjacency[i].begin(), t.adjacency[i].end());
  }
}

std::vector<std::uint32_t> hop_levels(const Topology& t, std::uint32_t root) {
  std::vector<std::uint32_t> level(t.size(), kNoParent);
  std::deque<std::uint32_t> frontier{root};
  level[root] = 0;
  while (!frontier.empty()) {
    const auto u = frontier.front();
    frontier.pop_front();
    for (auto v : t.adjacency[u]) {
      if (level[v] != kNoParent) continue;
      level[v] = level[u] + 1;
      frontier.push_back(v);
    }
  }
  return level;
}

}  // namespace

double radio_range_for_degree(double density, double mean_degree) {
  if (!(density > 0) || !(mean_degree > 0)) throw DomainError("density and degree must be positive");
  return std::sqrt(mean_degree / (std::numbers::pi * density));
}

Topology make_topology(std::vector<Point> positions, double side, double radio_range) {
  Topology t;
  t.side = side;
  t.radio_range = radio_range;
  t.positions = std::move(positions);
  build_adjacency(t);
  return t;
}

Topology make_topology(std::size_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> edges) {
  Topology t;
  t.positions.assign(n, Point{0, 0});
  t.adjacency.assign(n, {});
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw DomainError("edge endpoint outside the node set");
    if (a == b) continue;
    t.adjacency[a].push_back(b);
    t.adjacency[b].push_back(a);
  }
  for (auto& adj : t.adjacency) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  return t;
}

Topology generate_topology(std::size_t n, double density, double radio_range, std::uint64_t seed,
                           std::uint32_t max_attempts) {
  if (n == 0) throw DomainError("topology needs at least one sensor");
  if (!(density > 0)) throw DomainError("density must be positive");
  if (!(radio_range > 0)) throw DomainError("radio range must be positive");
  const double side = std::sqrt(static_cast<double>(n) / density);
  Rng rng(seed);
  for (std::uint32_t attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<Point> positions(n);
    for (auto& p : positions) {
      p.x = rng.uniform01() * side;
      p.y = rng.uniform01() * side;
    }
    Topology t = make_topology(std::move(positions), side, radio_range);
    t.seed = seed;
    t.regenerations = attempt;
    if (is_connected(t)) return t;
  }
  throw DomainError("no connected placement after " + std::to_string(max_attempts) +
                    " attempts; increase the radio range");
}

bool is_connected(const Topology& t) {
  if (t.size() == 0) return true;
  const auto level = hop_levels(t, 0);
  return std::none_of(level.begin(), level.end(), [](auto l) { return l == kNoParent; });
}

std::uint32_t RoutingTree::depth() const noexcept {
  return level.empty() ? 0 : *std::max_element(level.begin(), level.end());
}

RoutingTree bfs_tree(const Topology& t, std::uint32_t root) {
  if (root >= t.size()) throw DomainError("root " + std::to_string(root) + " is not a node");
  RoutingTree tree;
  tree.root = root;
  tree.level = hop_levels(t, root);
  tree.parent.assign(t.size(), kNoParent);
  tree.children.assign(t.size(), {});
  for (std::uint32_t v = 0; v < t.size(); ++v) {
    if (tree.level[v] == kNoParent)
      throw DomainError("node " + std::to_string(v) + " is unreachable from root " + std::to_string(root));
    if (v == root) continue;
    for (auto u : t.adjacency[v]) {
      if (tree.level[u] + 1 == tree.level[v]) {
        tree.parent[v] = u;
        break;
      }
    }
    tree.children[tree.parent[v]].push_back(v);
  }
  return tree;
}

ListSummary ListSummary::singleton(std::uint64_t value) {
  ListSummary s;
  s.entries_.push_back({value, 1});
  return s;
}

void ListSummary::absorb(const ListSummary& other) {
  std::vector<Entry> merged;
  merged.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->value < b->value)) {
      merged.push_back(*a++);
    } else if (a == entries_.end() || b->value < a->value) {
      merged.push_back(*b++);
    } else {
      merged.push_back({a->value, a->count + b->count});
      ++a;
      ++b;
    }
  }
  entries_ = std::move(merged);
}

std::uint64_t ListSummary::total() const noexcept {
  std::uint64_t n = 0;
  for (const auto& e : entries_) n += e.count;
  return n;
}

FrequencyVector ListSummary::to_frequencies() const {
  FrequencyVector f;
  for (const auto& e : entries_) f.add(e.value, e.count);
  return f;
}

const char* to_string(Scheme s) noexcept { return s == Scheme::QDigest ? "qdigest" : "list"; }

std::size_t tuple_bytes(const DigestConfig& cfg, std::uint64_t n_total) noexcept {
  return (id_bits(cfg.log_sigma()) + count_bits(n_total) + 7) / 8;
}

std::uint64_t k_for_budget(std::uint64_t sigma, std::size_t budget_bytes, std::uint64_t n_total) {
  const auto probe = DigestConfig::make(sigma, 1);
  const std::size_t per_tuple = tuple_bytes(probe, n_total);
  const std::uint64_t k = budget_bytes / per_tuple / 3;
  if (k == 0)
    throw DomainError("budget of " + std::to_string(budget_bytes) + " bytes holds fewer than 3 tuples of " +
                      std::to_string(per_tuple) + " bytes");
  return k;
}

ExperimentReport run_aggregation(const RoutingTree& tree, std::span<const std::uint64_t> readings,
                                 const DigestConfig& cfg, Scheme scheme, std::span<const double> quantiles) {
  const std::size_t n = tree.size();
  if (readings.size() != n)
    throw DomainError("expected " + std::to_string(n) + " readings, got " + std::to_string(readings.size()));
  for (std::uint32_t v = 0; v < n; ++v) {
    if (v == tree.root) continue;
    if (readings[v] == 0 || readings[v] > cfg.declared_sigma())
      throw DomainError("reading " + std::to_string(readings[v]) + " at node " + std::to_string(v) +
                        " outside [1, " + std::to_string(cfg.declared_sigma()) + "]");
  }

  // Deepest first; ties by id.
  std::vector<std::uint32_t> order(n);
  for (std::uint32_t v = 0; v < n; ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return tree.level[a] > tree.level[b]; });

  ExperimentReport report;
  report.scheme = scheme;
  report.node_bytes.assign(n, 0);
  const std::size_t list_tuple_bytes = tuple_bytes(cfg, n);

  std::vector<std::optional<QDigest>> digests(n);
  std::vector<std::optional<ListSummary>> lists(n);

  for (const auto v : order) {
    const bool is_root = v == tree.root;
    if (scheme == Scheme::QDigest) {
      std::vector<QDigest> parts;
      parts.reserve(tree.children[v].size() + 1);
      for (auto c : tree.children[v]) {
        parts.push_back(std::move(*digests[c]));
        digests[c].reset();
      }
      if (!is_root) parts.push_back(QDigest::singleton(cfg, readings[v]));
      QDigest summary = parts.empty() ? QDigest(cfg) : merge(parts);
      if (!is_root) report.node_bytes[v] = encode(summary).size();
      digests[v] = std::move(summary);
    } else {
      ListSummary summary = is_root ? ListSummary{} : ListSummary::singleton(readings[v]);
      for (auto c : tree.children[v]) {
        summary.absorb(*lists[c]);
        lists[c].reset();
      }
      if (!is_root) report.node_bytes[v] = summary.size() * list_tuple_bytes;
      lists[v] = std::move(summary);
    }
  }

  for (auto b : report.node_bytes) {
    report.total_bytes += b;
    report.max_message_bytes = std::max<std::uint64_t>(report.max_message_bytes, b);
  }

  std::vector<std::uint64_t> sensed;
  sensed.reserve(n);
  for (std::uint32_t v = 0; v < n; ++v)
    if (v != tree.root) sensed.push_back(readings[v]);
  const auto truth = FrequencyVector::from_readings(sensed);
  report.readings = truth.total();

  if (scheme == Scheme::QDigest) {
    report.root_digest = std::move(digests[tree.root]);
    report.theta = confidence_factor(*report.root_digest).theta();
  } else {
    report.root_list = std::move(lists[tree.root]);
  }

  if (!truth.empty()) {
    const FrequencyVector list_freq = report.root_list ? report.root_list->to_frequencies() : FrequencyVector{};
    for (double q : quantiles) {
      const std::uint64_t answer =
          scheme == Scheme::QDigest ? quantile(*report.root_digest, q).value : oracle::exact_quantile(list_freq, q);
      const std::uint64_t err = oracle::quantile_rank_error(truth, q, answer);
      report.quantile_errors.push_back(
          {q, answer, err, static_cast<double>(err) / static_cast<double>(truth.total())});
    }
  }
  return report;
}

double ResidualPower::percentile(double p) const {
  if (sorted.empty()) return 1.0;
  const double clamped = std::clamp(p, 0.0, 1.0);
  const auto rank = static_cast<std::size_t>(std::ceil(clamped * static_cast<double>(sorted.size())));
  return sorted[rank == 0 ? 0 : rank - 1];
}

ResidualPower residual_power(const ExperimentReport& report, double initial, double cost_per_byte) {
  if (!(initial > 0)) throw DomainError("initial power must be positive");
  ResidualPower out;
  out.per_node.reserve(report.node_bytes.size());
  for (auto bytes : report.node_bytes)
    out.per_node.push_back(std::max(0.0, 1.0 - static_cast<double>(bytes) * cost_per_byte / initial));
  out.sorted = out.per_node;
  std::sort(out.sorted.begin(), out.sorted.end());
  return out;
}

}  // namespace qdigest::netsim
