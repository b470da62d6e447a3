#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qdigest/datasets.hpp"
#include "qdigest/digest.hpp"
#include "run_config.hpp"

namespace qdigest::cli {

/// Column order of every simulate row.
inline constexpr const char* kCsvHeader = "seed,scheme,n,sigma,budget_bytes,k,metric,value";

/// Per seed: one topology, one reading vector, then every (budget, scheme).
/// Rows are grouped by budget, then (seed, scheme), followed by one mean
/// row per (scheme, metric) with seed "mean". Output is independent of
/// thread scheduling.
void cmd_simulate(const RunConfig& cfg, std::ostream& csv);

/// Equi-width histogram of the base-station digest (first seed, first
/// budget) next to the exact histogram. Columns: bucket,low,high,approx,exact.
void cmd_histogram(const RunConfig& cfg, std::ostream& csv);

struct QuerySpec {
  std::vector<double> quantiles;
  std::vector<std::uint64_t> ranks;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
  std::vector<double> consensus;
};

/// Answers queries from a stored digest alone.
nlohmann::json cmd_query(const QDigest& digest, const QuerySpec& spec);

/// Reading vector for a seed: uniform draws or terrain samples at the
/// topology's sensor positions (`grid` required for the grid dataset).
std::vector<std::uint64_t> make_readings(const RunConfig& cfg, std::uint64_t seed, const netsim::Topology& t,
                                         const datasets::ElevationGrid* grid);

netsim::Topology make_topology(const RunConfig& cfg, std::uint64_t seed);

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace qdigest::cli
