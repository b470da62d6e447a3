#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "qdigest/codec.hpp"
#include "qdigest/datasets.hpp"
#include "qdigest/error.hpp"

namespace cli = qdigest::cli;

namespace {

constexpr int kUsageExit = 1;
constexpr int kRuntimeExit = 2;

// Experiment flags are captured as text and applied on top of the config
// file, so a flag always wins over the file.
struct RunFlags {
  std::string config;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void add(CLI::App* app, const std::string& key, const std::string& help) {
    options[key] = app->add_option("--" + key, values[key], help);
  }

  cli::RunConfig resolve() const {
    cli::RunConfig cfg;
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw cli::UsageError("cannot open config file '" + config + "'");
      cli::apply_config_file(cfg, in);
    }
    for (const auto& [key, opt] : options)
      if (opt->count() > 0) cli::apply_setting(cfg, key, values.at(key));
    return cfg;
  }
};

void add_run_flags(CLI::App* app, RunFlags& flags) {
  app->add_option("--config", flags.config, "key = value settings file; flags override it");
  flags.add(app, "nodes", "number of sensors including the base station (default 2000)");
  flags.add(app, "sigma", "largest reading value (default 65536)");
  flags.add(app, "budget", "message budget(s) in bytes, comma separated (default 160,400)");
  flags.add(app, "k", "explicit compression factor, overrides --budget");
  flags.add(app, "dataset", "uniform | grid (default uniform)");
  flags.add(app, "grid", "elevation grid file for --dataset grid");
  flags.add(app, "seeds", "comma separated topology seeds (default 1,2,3,4,5)");
  flags.add(app, "schemes", "qdigest,list (default both)");
  flags.add(app, "quantiles", "extra quantiles to score besides the median");
  flags.add(app, "density", "sensors per unit area (default 0.001)");
  flags.add(app, "degree", "expected neighbours per sensor (default 12)");
  flags.add(app, "initial-power", "battery units per sensor (default 40000)");
  flags.add(app, "cost-per-byte", "battery units per transmitted byte (default 1)");
  flags.add(app, "out", "write output here instead of stdout");
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw cli::UsageError("cannot write '" + path + "'");
  out << text;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw cli::UsageError("range must be LOW:HIGH, got '" + text + "'");
  try {
    return {std::stoull(text.substr(0, colon)), std::stoull(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw cli::UsageError("range must be LOW:HIGH, got '" + text + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-digest quantile summaries and sensor-network aggregation experiments"};
  app.require_subcommand(1);

  RunFlags sim_flags;
  auto* simulate = app.add_subcommand("simulate", "run aggregation experiments and print CSV metrics");
  add_run_flags(simulate, sim_flags);
  sim_flags.add(simulate, "save-digest", "write the base-station digest of the first seed and budget");

  RunFlags hist_flags;
  auto* histogram = app.add_subcommand("histogram", "equi-width histogram from the base-station digest");
  add_run_flags(histogram, hist_flags);
  hist_flags.add(histogram, "buckets", "number of equi-width buckets (default 32)");

  std::string digest_file, query_out;
  std::uint64_t query_k = 0;
  cli::QuerySpec spec;
  std::vector<std::string> ranges;
  auto* query = app.add_subcommand("query", "answer queries from a saved digest");
  query->add_option("digest", digest_file, "encoded digest file")->required();
  query->add_option("--k", query_k, "compression factor the digest was built with")->required();
  query->add_option("--quantile", spec.quantiles, "quantile fraction in (0,1), repeatable");
  query->add_option("--rank", spec.ranks, "inverse quantile of a value, repeatable");
  query->add_option("--range", ranges, "closed range LOW:HIGH, repeatable");
  query->add_option("--consensus", spec.consensus, "support fraction for frequent values, repeatable");
  query->add_option("--out", query_out, "write JSON here instead of stdout");

  std::string readings_file, build_out;
  std::uint64_t build_sigma = 65536, build_k = 0;
  auto* build = app.add_subcommand("build", "digest a file of readings (one integer per line)");
  build->add_option("readings", readings_file, "readings file, '-' for stdin")->required();
  build->add_option("--sigma", build_sigma, "largest reading value");
  build->add_option("--k", build_k, "compression factor")->required();
  build->add_option("--out", build_out, "encoded digest file")->required();

  std::size_t grid_w = 64, grid_h = 64;
  std::string grid_out;
  auto* gen_grid = app.add_subcommand("gen-grid", "write the synthetic two-plateau elevation grid");
  gen_grid->add_option("--width", grid_w, "columns");
  gen_grid->add_option("--height", grid_h, "rows");
  gen_grid->add_option("--out", grid_out, "grid file, stdout if omitted");

  RunFlags readings_flags;
  auto* readings = app.add_subcommand("readings", "export the reading vector of the first seed");
  add_run_flags(readings, readings_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      auto cfg = sim_flags.resolve();
      std::ostringstream csv;
      cli::cmd_simulate(cfg, csv);
      emit(cfg.out, csv.str());
    } else if (*histogram) {
      auto cfg = hist_flags.resolve();
      std::ostringstream csv;
      cli::cmd_histogram(cfg, csv);
      emit(cfg.out, csv.str());
    } else if (*query) {
      for (const auto& r : ranges) spec.ranges.push_back(parse_range(r));
      const auto bytes = cli::read_file(digest_file);
      const auto digest = qdigest::decode(bytes, query_k);
      emit(query_out, cli::cmd_query(digest, spec).dump(2) + "\n");
    } else if (*build) {
      std::vector<std::uint64_t> values;
      if (readings_file == "-") {
        values = qdigest::datasets::read_readings(std::cin);
      } else {
        std::ifstream in(readings_file);
        if (!in) throw cli::UsageError("cannot open '" + readings_file + "'");
        values = qdigest::datasets::read_readings(in);
      }
      const auto cfg = qdigest::DigestConfig::make(build_sigma, build_k);
      const auto digest = qdigest::QDigest::from_frequencies(qdigest::FrequencyVector::from_readings(values), cfg);
      cli::write_file(build_out, qdigest::encode(digest));
    } else if (*gen_grid) {
      std::ostringstream text;
      qdigest::datasets::write_two_plateau_grid(text, grid_w, grid_h);
      emit(grid_out, text.str());
    } else if (*readings) {
      auto cfg = readings_flags.resolve();
      cli::validate(cfg);
      std::optional<qdigest::datasets::ElevationGrid> grid;
      if (cfg.dataset == cli::Dataset::Grid) grid = qdigest::datasets::load_grid(cfg.grid, cfg.sigma);
      const auto topology = cli::make_topology(cfg, cfg.seeds.front());
      const auto values = cli::make_readings(cfg, cfg.seeds.front(), topology, grid ? &*grid : nullptr);
      std::ostringstream text;
      qdigest::datasets::write_readings(text, values);
      emit(cfg.out, text.str());
    }
  } catch (const cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageExit;
  } catch (const qdigest::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeExit;
  }
  return 0;
}
