#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>

#include "qdigest/codec.hpp"
#include "qdigest/error.hpp"
#include "qdigest/oracle.hpp"
#include "qdigest/query.hpp"
#include "qdigest/random.hpp"

namespace qdigest::cli {
namespace {

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string quantile_metric(double q) { return "error_q" + format_value(q); }

struct Metric {
  std::string name;
  double value;
};

struct RunResult {
  std::uint64_t seed;
  netsim::Scheme scheme;
  std::size_t budget;
  std::uint64_t k;
  std::vector<Metric> metrics;
  std::vector<std::uint8_t> root_bytes;  // encoded base-station digest, qdigest only
};

std::vector<Metric> metrics_of(const RunConfig& cfg, const netsim::ExperimentReport& report,
                               const netsim::Topology& topology) {
  std::vector<Metric> m;
  m.push_back({"median_error", report.quantile_errors.front().relative});
  for (std::size_t i = 1; i < report.quantile_errors.size(); ++i)
    m.push_back({quantile_metric(report.quantile_errors[i].q), report.quantile_errors[i].relative});
  m.push_back({"theta", report.theta});
  m.push_back({"max_bytes", static_cast<double>(report.max_message_bytes)});
  m.push_back({"total_bytes", static_cast<double>(report.total_bytes)});
  const auto power = netsim::residual_power(report, cfg.initial_power, cfg.cost_per_byte);
  m.push_back({"residual_min", power.min()});
  m.push_back({"residual_p01", power.percentile(0.01)});
  m.push_back({"residual_p50", power.percentile(0.5)});
  m.push_back({"regenerations", static_cast<double>(topology.regenerations)});
  return m;
}

std::vector<RunResult> run_seed(const RunConfig& cfg, std::uint64_t seed, const datasets::ElevationGrid* grid) {
  const auto topology = make_topology(cfg, seed);
  const auto tree = netsim::bfs_tree(topology, 0);
  const auto readings = make_readings(cfg, seed, topology, grid);

  // The median always comes first; extra quantiles follow in request order.
  std::vector<double> qs{0.5};
  for (double q : cfg.quantiles)
    if (q != 0.5) qs.push_back(q);

  std::vector<RunResult> out;
  for (auto budget : cfg.budgets) {
    const auto k = effective_k(cfg, budget);
    const auto dcfg = DigestConfig::make(cfg.sigma, k);
    for (auto scheme : cfg.schemes) {
      const auto report = netsim::run_aggregation(tree, readings, dcfg, scheme, qs);
      RunResult r{seed, scheme, budget, scheme == netsim::Scheme::QDigest ? k : 0, metrics_of(cfg, report, topology), {}};
      if (report.root_digest) r.root_bytes = encode(*report.root_digest);
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::optional<datasets::ElevationGrid> load_dataset(const RunConfig& cfg) {
  if (cfg.dataset != Dataset::Grid) return std::nullopt;
  return datasets::load_grid(cfg.grid, cfg.sigma);
}

}  // namespace

netsim::Topology make_topology(const RunConfig& cfg, std::uint64_t seed) {
  const double range = netsim::radio_range_for_degree(cfg.density, cfg.degree);
  return netsim::generate_topology(cfg.nodes, cfg.density, range, seed);
}

std::vector<std::uint64_t> make_readings(const RunConfig& cfg, std::uint64_t seed, const netsim::Topology& t,
                                         const datasets::ElevationGrid* grid) {
  if (cfg.dataset == Dataset::Grid) {
    if (grid == nullptr) throw UsageError("grid dataset selected but no grid loaded");
    return datasets::terrain_readings(*grid, t);
  }
  return datasets::uniform_readings(t.size(), cfg.sigma, mix_seed(seed, 1));
}

void cmd_simulate(const RunConfig& cfg, std::ostream& csv) {
  validate(cfg);
  const auto grid = load_dataset(cfg);
  const auto* grid_ptr = grid ? &*grid : nullptr;

  std::vector<std::vector<RunResult>> per_seed(cfg.seeds.size());
  if (cfg.parallel && cfg.seeds.size() > 1) {
    std::vector<std::future<std::vector<RunResult>>> jobs;
    for (auto seed : cfg.seeds) jobs.push_back(std::async(std::launch::async, run_seed, std::cref(cfg), seed, grid_ptr));
    for (std::size_t i = 0; i < jobs.size(); ++i) per_seed[i] = jobs[i].get();
  } else {
    for (std::size_t i = 0; i < cfg.seeds.size(); ++i) per_seed[i] = run_seed(cfg, cfg.seeds[i], grid_ptr);
  }

  if (!cfg.save_digest.empty()) write_file(cfg.save_digest, per_seed.front().front().root_bytes);

  csv << kCsvHeader << '\n';
  const std::string fixed = "," + std::to_string(cfg.nodes) + "," + std::to_string(cfg.sigma) + ",";
  for (auto budget : cfg.budgets) {
    // (scheme index, metric index) -> running sum, for the mean rows.
    std::map<std::pair<std::size_t, std::size_t>, double> sums;
    std::vector<std::vector<std::string>> names(cfg.schemes.size());
    std::vector<std::uint64_t> ks(cfg.schemes.size());
    for (const auto& runs : per_seed) {
      for (const auto& r : runs) {
        if (r.budget != budget) continue;
        const auto s = static_cast<std::size_t>(
            std::find(cfg.schemes.begin(), cfg.schemes.end(), r.scheme) - cfg.schemes.begin());
        ks[s] = r.k;
        names[s].clear();
        for (std::size_t m = 0; m < r.metrics.size(); ++m) {
          csv << r.seed << ',' << netsim::to_string(r.scheme) << fixed << budget << ',' << r.k << ','
              << r.metrics[m].name << ',' << format_value(r.metrics[m].value) << '\n';
          sums[{s, m}] += r.metrics[m].value;
          names[s].push_back(r.metrics[m].name);
        }
      }
    }
    for (std::size_t s = 0; s < cfg.schemes.size(); ++s)
      for (std::size_t m = 0; m < names[s].size(); ++m)
        csv << "mean," << netsim::to_string(cfg.schemes[s]) << fixed << budget << ',' << ks[s] << ','
            << names[s][m] << ',' << format_value(sums[{s, m}] / static_cast<double>(cfg.seeds.size())) << '\n';
  }
}

void cmd_histogram(const RunConfig& cfg, std::ostream& csv) {
  validate(cfg);
  const auto grid = load_dataset(cfg);
  const auto seed = cfg.seeds.front();
  const auto topology = make_topology(cfg, seed);
  const auto tree = netsim::bfs_tree(topology, 0);
  const auto readings = make_readings(cfg, seed, topology, grid ? &*grid : nullptr);
  const auto dcfg = DigestConfig::make(cfg.sigma, effective_k(cfg, cfg.budgets.front()));
  const auto report = netsim::run_aggregation(tree, readings, dcfg, netsim::Scheme::QDigest);
  const QDigest& root = *report.root_digest;

  FrequencyVector truth;
  for (std::uint32_t v = 0; v < readings.size(); ++v)
    if (v != tree.root) truth.add(readings[v]);

  if (cfg.buckets > cfg.sigma) throw UsageError("more buckets than values");
  csv << "bucket,low,high,approx,exact\n";
  const auto b = static_cast<std::uint64_t>(cfg.buckets);
  for (std::uint64_t i = 0; i < b; ++i) {
    const std::uint64_t low = 1 + i * cfg.sigma / b;
    const std::uint64_t high = (i + 1) * cfg.sigma / b;
    csv << i << ',' << low << ',' << high << ',' << range_count(root, low, high).rank << ','
        << oracle::exact_range(truth, low, high) << '\n';
  }
}

nlohmann::json cmd_query(const QDigest& digest, const QuerySpec& spec) {
  nlohmann::json out;
  const auto& cfg = digest.config();
  out["n"] = digest.total();
  out["sigma"] = cfg.declared_sigma();
  out["k"] = cfg.k();
  out["size"] = digest.size();
  out["epsilon"] = cfg.epsilon();
  out["error_budget"] = cfg.error_budget(digest.total());
  if (digest.empty()) {
    out["theta"] = 0.0;
    if (!spec.quantiles.empty() || !spec.consensus.empty()) throw DomainError("quantile query on an empty digest");
  } else {
    out["theta"] = confidence_factor(digest).theta();
  }

  out["quantiles"] = nlohmann::json::array();
  for (double q : spec.quantiles) {
    const auto a = quantile(digest, q);
    out["quantiles"].push_back({{"q", q}, {"value", a.value}, {"error_budget", a.error_budget}});
  }
  out["ranks"] = nlohmann::json::array();
  for (auto x : spec.ranks) {
    const auto a = inverse_quantile(digest, x);
    out["ranks"].push_back({{"x", x}, {"rank", a.rank}, {"error_budget", a.error_budget}});
  }
  out["ranges"] = nlohmann::json::array();
  for (auto [lo, hi] : spec.ranges) {
    const auto a = range_count(digest, lo, hi);
    out["ranges"].push_back({{"low", lo}, {"high", hi}, {"count", a.rank}, {"error_budget", a.error_budget}});
  }
  out["consensus"] = nlohmann::json::array();
  for (double s : spec.consensus) {
    auto values = nlohmann::json::array();
    for (const auto& fv : consensus(digest, s)) values.push_back({{"value", fv.value}, {"count", fv.count}});
    out["consensus"].push_back({{"s", s}, {"values", values}});
  }
  return out;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace qdigest::cli
