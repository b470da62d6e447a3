#include <benchmark/benchmark.h>

#include <vector>

#include "qdigest/codec.hpp"
#include "qdigest/datasets.hpp"
#include "qdigest/digest.hpp"
#include "qdigest/netsim.hpp"
#include "qdigest/query.hpp"

using namespace qdigest;

namespace {

constexpr std::uint64_t kSigma = 65536;

FrequencyVector frequencies(std::size_t n, std::uint64_t seed) {
  return FrequencyVector::from_readings(datasets::uniform_readings(n, kSigma, seed));
}

QDigest digest(std::size_t n, std::uint64_t k, std::uint64_t seed) {
  return QDigest::from_frequencies(frequencies(n, seed), DigestConfig::make(kSigma, k));
}

}  // namespace

static void BM_FromFrequencies(benchmark::State& state) {
  const auto f = frequencies(static_cast<std::size_t>(state.range(0)), 1);
  const auto cfg = DigestConfig::make(kSigma, static_cast<std::uint64_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(QDigest::from_frequencies(f, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FromFrequencies)->Args({1000, 33})->Args({100000, 33})->Args({100000, 100});

static void BM_MergePair(benchmark::State& state) {
  const auto k = static_cast<std::uint64_t>(state.range(0));
  const auto a = digest(5000, k, 1), b = digest(5000, k, 2);
  for (auto _ : state) benchmark::DoNotOptimize(merge(a, b));
}
BENCHMARK(BM_MergePair)->Arg(10)->Arg(33)->Arg(100);

static void BM_MergeMany(benchmark::State& state) {
  std::vector<QDigest> parts;
  for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(state.range(0)); ++s) parts.push_back(digest(500, 33, s));
  for (auto _ : state) benchmark::DoNotOptimize(merge(std::span<const QDigest>(parts)));
}
BENCHMARK(BM_MergeMany)->Arg(4)->Arg(16);

static void BM_Encode(benchmark::State& state) {
  const auto d = digest(10000, static_cast<std::uint64_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(encode(d));
}
BENCHMARK(BM_Encode)->Arg(33)->Arg(100);

static void BM_Decode(benchmark::State& state) {
  const auto k = static_cast<std::uint64_t>(state.range(0));
  const auto bytes = encode(digest(10000, k, 3));
  for (auto _ : state) benchmark::DoNotOptimize(decode(bytes, k));
}
BENCHMARK(BM_Decode)->Arg(33)->Arg(100);

static void BM_Quantile(benchmark::State& state) {
  const auto d = digest(10000, static_cast<std::uint64_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(quantile(d, 0.5));
}
BENCHMARK(BM_Quantile)->Arg(33)->Arg(100);

static void BM_Aggregation(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto t = netsim::generate_topology(n, 0.001, netsim::radio_range_for_degree(0.001, 12), 1);
  const auto tree = netsim::bfs_tree(t, 0);
  const auto readings = datasets::uniform_readings(n, kSigma, 1);
  const auto cfg = DigestConfig::make(kSigma, 33);
  for (auto _ : state) benchmark::DoNotOptimize(netsim::run_aggregation(tree, readings, cfg, netsim::Scheme::QDigest));
}
BENCHMARK(BM_Aggregation)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
