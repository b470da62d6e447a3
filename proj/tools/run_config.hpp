#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdigest/netsim.hpp"

namespace qdigest::cli {

/// Usage errors: bad flags, inconsistent configuration.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Dataset { Uniform, Grid };

struct RunConfig {
  std::size_t nodes = 2000;
  std::uint64_t sigma = 65536;
  std::vector<std::size_t> budgets{160, 400};
  std::optional<std::uint64_t> k;  ///< overrides the budget-derived k
  Dataset dataset = Dataset::Uniform;
  std::string grid;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::vector<netsim::Scheme> schemes{netsim::Scheme::QDigest, netsim::Scheme::List};
  std::vector<double> quantiles{0.5};
  double density = 0.001;  ///< sensors per unit area: 1000 sensors on 1000 x 1000
  double degree = 12;      ///< expected neighbours per sensor, sets the radio range
  double initial_power = 40000;
  double cost_per_byte = 1;
  std::size_t buckets = 32;  ///< histogram only
  std::string out;
  std::string save_digest;
  bool parallel = true;
};

/// Applies one `key = value` setting. Keys are the long flag names.
/// Throws UsageError on an unknown key or a malformed value.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Reads `key = value` lines; '#' starts a comment. Throws ParseError
/// with the line number.
void apply_config_file(RunConfig& cfg, std::istream& in);

/// Throws UsageError if the configuration cannot run.
void validate(const RunConfig& cfg);

/// k actually used for a budget: the explicit k, or floor(budget / tuple bytes / 3).
std::uint64_t effective_k(const RunConfig& cfg, std::size_t budget);

std::vector<std::string> split_list(const std::string& text);

}  // namespace qdigest::cli
