#include "run_config.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include "qdigest/error.hpp"

namespace qdigest::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  std::istringstream ss(trim(text));
  T v{};
  ss >> v;
  if (!ss || !ss.eof()) throw UsageError("invalid value '" + text + "' for " + key);
  if constexpr (std::is_unsigned_v<T>) {
    if (trim(text).starts_with('-')) throw UsageError("invalid value '" + text + "' for " + key);
  }
  return v;
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
  std::vector<T> out;
  for (const auto& item : split_list(text)) out.push_back(parse_number<T>(key, item));
  if (out.empty()) throw UsageError("empty list for " + key);
  return out;
}

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void apply_setting(RunConfig& cfg, const std::string& raw_key, const std::string& value) {
  const std::string key = trim(raw_key);
  if (key == "nodes") {
    cfg.nodes = parse_number<std::size_t>(key, value);
  } else if (key == "sigma") {
    cfg.sigma = parse_number<std::uint64_t>(key, value);
  } else if (key == "budget") {
    cfg.budgets = parse_list<std::size_t>(key, value);
  } else if (key == "k") {
    cfg.k = parse_number<std::uint64_t>(key, value);
  } else if (key == "dataset") {
    const auto v = trim(value);
    if (v == "uniform") cfg.dataset = Dataset::Uniform;
    else if (v == "grid") cfg.dataset = Dataset::Grid;
    else throw UsageError("dataset must be 'uniform' or 'grid', got '" + v + "'");
  } else if (key == "grid") {
    cfg.grid = trim(value);
  } else if (key == "seeds") {
    cfg.seeds = parse_list<std::uint64_t>(key, value);
  } else if (key == "schemes") {
    cfg.schemes.clear();
    for (const auto& s : split_list(value)) {
      if (s == "qdigest") cfg.schemes.push_back(netsim::Scheme::QDigest);
      else if (s == "list") cfg.schemes.push_back(netsim::Scheme::List);
      else throw UsageError("unknown scheme '" + s + "'");
    }
    if (cfg.schemes.empty()) throw UsageError("empty list for schemes");
  } else if (key == "quantiles") {
    cfg.quantiles = parse_list<double>(key, value);
  } else if (key == "density") {
    cfg.density = parse_number<double>(key, value);
  } else if (key == "degree") {
    cfg.degree = parse_number<double>(key, value);
  } else if (key == "initial-power") {
    cfg.initial_power = parse_number<double>(key, value);
  } else if (key == "cost-per-byte") {
    cfg.cost_per_byte = parse_number<double>(key, value);
  } else if (key == "buckets") {
    cfg.buckets = parse_number<std::size_t>(key, value);
  } else if (key == "out") {
    cfg.out = trim(value);
  } else if (key == "save-digest") {
    cfg.save_digest = trim(value);
  } else {
    throw UsageError("unknown setting '" + key + "'");
  }
}

void apply_config_file(RunConfig& cfg, std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value'");
    try {
      apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
    } catch (const UsageError& e) {
      throw ParseError(line_no, e.what());
    }
  }
}

void validate(const RunConfig& cfg) {
  if (cfg.nodes < 2) throw UsageError("need at least 2 nodes (a base station and one sensor)");
  if (cfg.sigma < 2) throw UsageError("sigma must be at least 2");
  if (cfg.seeds.empty()) throw UsageError("at least one seed is required");
  if (cfg.schemes.empty()) throw UsageError("at least one scheme is required");
  if (cfg.budgets.empty()) throw UsageError("at least one budget is required");
  if (cfg.k && *cfg.k == 0) throw UsageError("k must be positive");
  if (!(cfg.density > 0) || !(cfg.degree > 0)) throw UsageError("density and degree must be positive");
  if (!(cfg.initial_power > 0)) throw UsageError("initial power must be positive");
  if (cfg.buckets == 0) throw UsageError("buckets must be at least 1");
  if (cfg.dataset == Dataset::Grid && cfg.grid.empty()) throw UsageError("--dataset grid needs --grid FILE");
  for (double q : cfg.quantiles)
    if (!(q > 0 && q < 1)) throw UsageError("quantiles must lie in (0, 1)");
  if (!cfg.k) {
    for (auto b : cfg.budgets) {
      try {
        netsim::k_for_budget(cfg.sigma, b, cfg.nodes);
      } catch (const DomainError& e) {
        throw UsageError(e.what());
      }
    }
  }
}

std::uint64_t effective_k(const RunConfig& cfg, std::size_t budget) {
  return cfg.k ? *cfg.k : netsim::k_for_budget(cfg.sigma, budget, cfg.nodes);
}

}  // namespace qdigest::cli
