#pragma once

// Test-only helpers: seeded generators and a sorted-vector reference that
// shares no code with the library's oracle module.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qdigest/digest.hpp"
#include "qdigest/frequency.hpp"

namespace testsupport {

/// Sorted copy of the readings; ranks by binary search.
class SortedSample {
 public:
  explicit SortedSample(std::vector<std::uint64_t> values) : v_(std::move(values)) {
    std::sort(v_.begin(), v_.end());
  }

  std::uint64_t size() const { return v_.size(); }
  std::uint64_t below(std::uint64_t x) const {
    return static_cast<std::uint64_t>(std::lower_bound(v_.begin(), v_.end(), x) - v_.begin());
  }
  std::uint64_t at_most(std::uint64_t x) const {
    return static_cast<std::uint64_t>(std::upper_bound(v_.begin(), v_.end(), x) - v_.begin());
  }
  std::uint64_t in_range(std::uint64_t lo, std::uint64_t hi) const { return at_most(hi) - below(lo); }
  std::uint64_t frequency(std::uint64_t x) const { return at_most(x) - below(x); }
  const std::vector<std::uint64_t>& values() const { return v_; }

  /// Smallest distance from ceil(q*n) to a sorted position holding x; a
  /// value that does not occur sits between positions below(x) and below(x)+1.
  std::uint64_t rank_error(double q, std::uint64_t x) const {
    const auto target = static_cast<std::int64_t>(std::ceil(q * static_cast<double>(size())));
    const auto first = static_cast<std::int64_t>(below(x)) + 1;
    const auto last = static_cast<std::int64_t>(at_most(x));
    if (first > last) return static_cast<std::uint64_t>(std::max(target - last, first - target));
    if (target < first) return static_cast<std::uint64_t>(first - target);
    if (target > last) return static_cast<std::uint64_t>(target - last);
    return 0;
  }

 private:
  std::vector<std::uint64_t> v_;
};

/// Readings from one of a few shapes: uniform, clustered, Zipf-like, few
/// distinct values. Mixing shapes exercises both heavy leaves and deep merges.
inline std::vector<std::uint64_t> random_readings(std::mt19937_64& rng, std::size_t n, std::uint64_t sigma) {
  std::vector<std::uint64_t> out(n);
  const int shape = static_cast<int>(rng() % 4);
  std::uniform_int_distribution<std::uint64_t> uni(1, sigma);
  switch (shape) {
    case 0:
      for (auto& v : out) v = uni(rng);
      break;
    case 1: {
      const std::uint64_t centre = uni(rng);
      std::normal_distribution<double> spread(0.0, static_cast<double>(sigma) / 64.0);
      for (auto& v : out) {
        const double x = static_cast<double>(centre) + spread(rng);
        v = static_cast<std::uint64_t>(std::clamp(std::llround(x), 1LL, static_cast<long long>(sigma)));
      }
      break;
    }
    case 2: {
      std::vector<std::uint64_t> atoms(64);
      for (auto& a : atoms) a = uni(rng);
      for (auto& v : out) {
        const double u = std::uniform_real_distribution<double>(0, 1)(rng);
        v = atoms[static_cast<std::size_t>(std::pow(u, 3.0) * 63.999)];
      }
      break;
    }
    default: {
      std::vector<std::uint64_t> atoms(1 + rng() % 8);
      for (auto& a : atoms) a = uni(rng);
      for (auto& v : out) v = atoms[rng() % atoms.size()];
    }
  }
  return out;
}

/// Splits readings into random chunks, digests each, and merges them up a
/// random binary tree of merges.
inline qdigest::QDigest random_merge_tree(std::mt19937_64& rng, const std::vector<std::uint64_t>& readings,
                                          const qdigest::DigestConfig& cfg) {
  std::vector<qdigest::QDigest> pool;
  std::size_t i = 0;
  while (i < readings.size()) {
    const std::size_t len = std::min<std::size_t>(readings.size() - i, 1 + rng() % (readings.size() / 4 + 1));
    qdigest::FrequencyVector f;
    for (std::size_t j = i; j < i + len; ++j) f.add(readings[j]);
    pool.push_back(len == 1 ? qdigest::QDigest::singleton(cfg, readings[i])
                            : qdigest::QDigest::from_frequencies(f, cfg));
    i += len;
  }
  while (pool.size() > 1) {
    const std::size_t a = rng() % pool.size();
    qdigest::QDigest left = std::move(pool[a]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(a));
    const std::size_t b = rng() % pool.size();
    pool[b] = qdigest::merge(left, pool[b]);
  }
  return pool.empty() ? qdigest::QDigest(cfg) : pool.front();
}

}  // namespace testsupport
