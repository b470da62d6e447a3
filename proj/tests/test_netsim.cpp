#include <doctest.h>

#include <algorithm>
#include <set>

#include "qdigest/codec.hpp"
#include "qdigest/datasets.hpp"
#include "qdigest/error.hpp"
#include "qdigest/netsim.hpp"
#include "support.hpp"

using namespace qdigest;
using namespace qdigest::netsim;

namespace {

RoutingTree random_tree(std::size_t n, std::uint64_t seed) {
  const double density = 0.001;
  const auto t = generate_topology(n, density, radio_range_for_degree(density, 12), seed);
  return bfs_tree(t, 0);
}

}  // namespace

TEST_SUITE("topology") {
  TEST_CASE("a single sensor is trivially connected") {
    auto t = generate_topology(1, 0.001, 50, 9);
    CHECK(t.size() == 1);
    CHECK(t.adjacency[0].empty());
    CHECK(is_connected(t));
    CHECK(t.regenerations == 0);
  }

  TEST_CASE("area scales with the sensor count at fixed density") {
    const double density = 0.001;
    auto t = generate_topology(1000, density, radio_range_for_degree(density, 12), 1);
    CHECK(t.side == doctest::Approx(1000.0));
    CHECK(generate_topology(4000, density, radio_range_for_degree(density, 12), 1).side == doctest::Approx(2000.0));
    for (const auto& p : t.positions) {
      CHECK(p.x >= 0);
      CHECK(p.x < 1000);
      CHECK(p.y >= 0);
      CHECK(p.y < 1000);
    }
  }

  TEST_CASE("deterministic under seed, symmetric, no self loops, distance rule") {
    const double r = radio_range_for_degree(0.001, 12);
    auto a = generate_topology(400, 0.001, r, 42);
    auto b = generate_topology(400, 0.001, r, 42);
    CHECK(a.adjacency == b.adjacency);
    CHECK(a.regenerations == b.regenerations);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a.positions[i].x == b.positions[i].x);
      CHECK(std::is_sorted(a.adjacency[i].begin(), a.adjacency[i].end()));
      for (std::size_t j = 0; j < a.size(); ++j) {
        const double dx = a.positions[i].x - a.positions[j].x, dy = a.positions[i].y - a.positions[j].y;
        const bool linked = std::binary_search(a.adjacency[i].begin(), a.adjacency[i].end(), j);
        CHECK(linked == (i != j && dx * dx + dy * dy <= r * r));
      }
    }
  }

  TEST_CASE("sparse placements are regenerated until connected") {
    std::uint32_t total = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto t = generate_topology(200, 0.001, radio_range_for_degree(0.001, 5), seed);
      CHECK(is_connected(t));
      total += t.regenerations;
    }
    CHECK(total > 0);
  }

  TEST_CASE("invalid parameters") {
    CHECK_THROWS_AS(generate_topology(10, 0, 5, 1), DomainError);
    CHECK_THROWS_AS(generate_topology(10, 0.1, -1, 1), DomainError);
    CHECK_THROWS_AS(generate_topology(0, 0.1, 1, 1), DomainError);
  }
}

TEST_SUITE("bfs_tree") {
  TEST_CASE("path graph") {
    const std::pair<std::uint32_t, std::uint32_t> edges[] = {{0, 1}, {1, 2}};
    auto tree = bfs_tree(make_topology(3, edges), 0);
    CHECK(tree.parent[0] == kNoParent);
    CHECK(tree.parent[1] == 0);
    CHECK(tree.parent[2] == 1);
    CHECK(tree.depth() == 2);
  }

  TEST_CASE("star rooted at the hub") {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 1; i < 8; ++i) edges.emplace_back(0, i);
    auto tree = bfs_tree(make_topology(8, edges), 0);
    for (std::uint32_t i = 1; i < 8; ++i) CHECK(tree.level[i] == 1);
    CHECK(tree.children[0].size() == 7);
  }

  TEST_CASE("ties go to the lowest-id parent") {
    const std::pair<std::uint32_t, std::uint32_t> edges[] = {{0, 2}, {0, 1}, {2, 3}, {1, 3}};
    CHECK(bfs_tree(make_topology(4, edges), 0).parent[3] == 1);
  }

  TEST_CASE("unreachable node is named") {
    const std::pair<std::uint32_t, std::uint32_t> edges[] = {{0, 1}};
    try {
      bfs_tree(make_topology(3, edges), 0);
      FAIL("expected an error");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("node 2") != std::string::npos);
    }
  }

  TEST_CASE("levels are hop counts on random placements") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const double r = radio_range_for_degree(0.001, 12);
      auto t = generate_topology(500, 0.001, r, seed);
      auto tree = bfs_tree(t, 0);
      for (std::uint32_t v = 0; v < t.size(); ++v) {
        if (v == tree.root) continue;
        CHECK(tree.level[v] == tree.level[tree.parent[v]] + 1);
        for (auto u : t.adjacency[v]) CHECK(tree.level[u] + 1 >= tree.level[v]);
      }
    }
  }
}

TEST_SUITE("aggregation") {
  TEST_CASE("budget conversion") {
    auto cfg = DigestConfig::make(65536, 1);
    CHECK(tuple_bytes(cfg, 2000) == 4);
    CHECK(k_for_budget(65536, 400, 2000) == 33);
    CHECK(k_for_budget(65536, 160, 2000) == 13);
    CHECK(k_for_budget(65536, 80, 2000) == 6);
    CHECK_THROWS_AS(k_for_budget(65536, 8, 2000), DomainError);
  }

  TEST_CASE("list root of a path is the exact multiset") {
    const std::pair<std::uint32_t, std::uint32_t> edges[] = {{0, 1}, {1, 2}, {2, 3}};
    auto tree = bfs_tree(make_topology(4, edges), 0);
    std::vector<std::uint64_t> readings{999, 7, 3, 7};
    const double qs[] = {0.5};
    auto report = run_aggregation(tree, readings, DigestConfig::make(16, 1), Scheme::List, qs);
    REQUIRE(report.root_list);
    CHECK(report.root_list->to_frequencies() == FrequencyVector{{3, 1}, {7, 2}});
    CHECK(report.node_bytes == std::vector<std::uint64_t>{0, 2, 2, 1});  // 1 byte per tuple
    CHECK(report.quantile_errors.front().rank_error == 0);
  }

  TEST_CASE("q-digest bytes are encoded lengths, root holds every sensed reading") {
    auto tree = random_tree(600, 3);
    auto readings = datasets::uniform_readings(600, 65536, 5);
    const double qs[] = {0.5, 0.9};
    auto cfg = DigestConfig::make(65536, k_for_budget(65536, 160, 600));
    auto report = run_aggregation(tree, readings, cfg, Scheme::QDigest, qs);
    REQUIRE(report.root_digest);
    CHECK(report.root_digest->total() == 599);
    CHECK(report.readings == 599);
    CHECK(validate(*report.root_digest).empty());
    CHECK(report.node_bytes[tree.root] == 0);
    std::uint64_t sum = 0;
    for (auto b : report.node_bytes) {
      sum += b;
      CHECK(b <= 160);
    }
    CHECK(sum == report.total_bytes);
    CHECK(report.theta <= cfg.epsilon());
    for (const auto& e : report.quantile_errors)
      CHECK(static_cast<double>(e.rank_error) <= report.theta * 599 + 1e-9);
  }

  TEST_CASE("leaf sensors send a one-tuple digest") {
    const std::pair<std::uint32_t, std::uint32_t> edges[] = {{0, 1}};
    auto tree = bfs_tree(make_topology(2, edges), 0);
    std::vector<std::uint64_t> readings{0, 12};
    auto report = run_aggregation(tree, readings, DigestConfig::make(16, 2), Scheme::QDigest);
    CHECK(report.node_bytes[1] == encoded_size(4, 1, 1));
  }

  TEST_CASE("list answers quantiles exactly") {
    auto tree = random_tree(300, 8);
    auto readings = datasets::uniform_readings(300, 65536, 1);
    const double qs[] = {0.1, 0.5, 0.77};
    auto report = run_aggregation(tree, readings, DigestConfig::make(65536, 5), Scheme::List, qs);
    for (const auto& e : report.quantile_errors) CHECK(e.rank_error == 0);
  }

  TEST_CASE("deterministic reports") {
    auto tree = random_tree(400, 4);
    auto readings = datasets::uniform_readings(400, 65536, 4);
    auto cfg = DigestConfig::make(65536, 20);
    const double qs[] = {0.25, 0.5};
    auto a = run_aggregation(tree, readings, cfg, Scheme::QDigest, qs);
    auto b = run_aggregation(tree, readings, cfg, Scheme::QDigest, qs);
    CHECK(a.node_bytes == b.node_bytes);
    CHECK(*a.root_digest == *b.root_digest);
    CHECK(a.theta == b.theta);
  }

  TEST_CASE("bad readings") {
    const std::pair<std::uint32_t, std::uint32_t> edges[] = {{0, 1}};
    auto tree = bfs_tree(make_topology(2, edges), 0);
    auto cfg = DigestConfig::make(16, 2);
    std::vector<std::uint64_t> out_of_range{1, 17};
    CHECK_THROWS_AS(run_aggregation(tree, out_of_range, cfg, Scheme::QDigest), DomainError);
    std::vector<std::uint64_t> too_few{1};
    CHECK_THROWS_AS(run_aggregation(tree, too_few, cfg, Scheme::List), DomainError);
  }
}

TEST_SUITE("residual_power") {
  TEST_CASE("per-byte depletion") {
    ExperimentReport report;
    report.node_bytes = {0, 400, 20000, 50000};
    auto p = residual_power(report, 40000, 1);
    CHECK(p.per_node[0] == 1.0);
    CHECK(p.per_node[1] == doctest::Approx(0.99));
    CHECK(p.per_node[2] == doctest::Approx(0.5));
    CHECK(p.per_node[3] == 0.0);
    CHECK(p.min() == 0.0);
    CHECK(p.sorted.front() == 0.0);
    CHECK(p.sorted.back() == 1.0);
    CHECK(p.percentile(0.5) == doctest::Approx(0.5));
  }

  TEST_CASE("initial power must be positive") {
    CHECK_THROWS_AS(residual_power(ExperimentReport{}, 0, 1), DomainError);
  }
}
