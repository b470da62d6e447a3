#include <doctest.h>

#include <random>

#include "qdigest/error.hpp"
#include "qdigest/query.hpp"
#include "support.hpp"

using namespace qdigest;
using testsupport::SortedSample;

namespace {

QDigest worked_digest() {
  std::vector<Bucket> raw{{1, 1}, {6, 2}, {7, 2}, {10, 4}, {11, 6}};
  return QDigest::from_buckets(DigestConfig::make(8, 5), raw);
}

// A multiset consistent with worked_digest(): 1, four 3s, six 4s, 5, 6, 7, 8.
SortedSample fig2a() { return SortedSample({1, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4, 5, 6, 7, 8}); }

QDigest build(const std::vector<std::uint64_t>& readings, std::uint64_t sigma, std::uint64_t k) {
  return QDigest::from_frequencies(FrequencyVector::from_readings(readings), DigestConfig::make(sigma, k));
}

}  // namespace

TEST_SUITE("quantile") {
  TEST_CASE("median of the worked digest") {
    auto a = quantile(worked_digest(), 0.5);
    CHECK(a.value == 4);
    CHECK(a.error_budget == 9);
  }

  TEST_CASE("exact when n < k") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      auto readings = testsupport::random_readings(rng, 1 + rng() % 99, 1024);
      auto q = build(readings, 1024, 100);
      SortedSample truth(readings);
      for (double f : {0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.999}) {
        const auto pos = static_cast<std::size_t>(std::ceil(f * static_cast<double>(readings.size())));
        CHECK(quantile(q, f).value == truth.values()[pos - 1]);
      }
    }
  }

  TEST_CASE("one-sided window on a large random multiset") {
    std::mt19937_64 rng(99);
    std::vector<std::uint64_t> readings(10000);
    for (auto& v : readings) v = 1 + rng() % 65536;
    auto q = build(readings, 65536, 33);
    SortedSample truth(readings);
    const double n = 10000;
    const double eps = 16.0 / 33.0;
    for (double f : {0.1, 0.25, 0.5, 0.75, 0.9}) {
      const auto x = quantile(q, f).value;
      CHECK(static_cast<double>(truth.at_most(x)) >= f * n);
      CHECK(static_cast<double>(truth.rank_error(f, x)) <= eps * n);
    }
  }

  TEST_CASE("domain errors") {
    CHECK_THROWS_AS(quantile(QDigest(DigestConfig::make(8, 5)), 0.5), DomainError);
    CHECK_THROWS_AS(quantile(worked_digest(), 0.0), DomainError);
    CHECK_THROWS_AS(quantile(worked_digest(), 1.0), DomainError);
    CHECK_THROWS_AS(quantile(worked_digest(), -0.2), DomainError);
  }

  TEST_CASE("high quantile of a singleton") {
    auto q = QDigest::singleton(DigestConfig::make(65536, 10), 4242);
    CHECK(quantile(q, 0.999).value == 4242);
    CHECK(quantile(q, 0.001).value == 4242);
  }

  TEST_CASE("answers never exceed the declared sigma") {
    auto cfg = DigestConfig::make(100, 1);
    FrequencyVector f{{99, 3}, {100, 3}};
    auto q = QDigest::from_frequencies(f, cfg);
    CHECK(quantile(q, 0.9).value <= 100);
  }
}

TEST_SUITE("inverse_quantile") {
  TEST_CASE("worked digest") {
    CHECK(inverse_quantile(worked_digest(), 4).rank == 4);
    CHECK(fig2a().below(4) == 5);
    CHECK(inverse_quantile(worked_digest(), 1).rank == 0);
    CHECK(inverse_quantile(worked_digest(), 9).rank == 15);
  }

  TEST_CASE("exact on an uncompressed digest") {
    std::vector<std::uint64_t> readings{2, 2, 5, 7, 8, 8, 8};
    auto q = build(readings, 8, 50);
    SortedSample truth(readings);
    for (std::uint64_t x = 1; x <= 9; ++x) CHECK(inverse_quantile(q, x).rank == truth.below(x));
  }

  TEST_CASE("undercounts by at most eps*n") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 40; ++trial) {
      auto readings = testsupport::random_readings(rng, 100 + rng() % 3000, 4096);
      auto q = testsupport::random_merge_tree(rng, readings, DigestConfig::make(4096, 1 + rng() % 50));
      SortedSample truth(readings);
      const double bound = q.config().epsilon() * static_cast<double>(readings.size());
      for (int i = 0; i < 50; ++i) {
        const std::uint64_t x = 1 + rng() % 4096;
        const auto got = inverse_quantile(q, x).rank;
        CHECK(got <= truth.below(x));
        CHECK(static_cast<double>(truth.below(x) - got) <= bound);
      }
    }
  }

  TEST_CASE("out of range") {
    CHECK_THROWS_AS(inverse_quantile(worked_digest(), 0), DomainError);
    CHECK_THROWS_AS(inverse_quantile(worked_digest(), 10), DomainError);
  }
}

TEST_SUITE("range_count") {
  TEST_CASE("worked digest") {
    CHECK(range_count(worked_digest(), 3, 4).rank == 10);
    CHECK(fig2a().in_range(3, 4) == 10);
    CHECK(range_count(worked_digest(), 1, 8).rank == 15);
    CHECK(range_count(worked_digest(), 3, 4).error_budget == 18);
  }

  TEST_CASE("random ranges stay within 2 eps n") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
      auto readings = testsupport::random_readings(rng, 500 + rng() % 5000, 65536);
      auto q = testsupport::random_merge_tree(rng, readings, DigestConfig::make(65536, 33));
      SortedSample truth(readings);
      const double bound = 2 * q.config().epsilon() * static_cast<double>(readings.size());
      for (int i = 0; i < 100; ++i) {
        std::uint64_t lo = 1 + rng() % 65536, hi = 1 + rng() % 65536;
        if (lo > hi) std::swap(lo, hi);
        const auto got = static_cast<double>(range_count(q, lo, hi).rank);
        CHECK(std::abs(got - static_cast<double>(truth.in_range(lo, hi))) <= bound);
      }
    }
  }

  TEST_CASE("bad ranges") {
    CHECK_THROWS_AS(range_count(worked_digest(), 5, 4), DomainError);
    CHECK_THROWS_AS(range_count(worked_digest(), 0, 4), DomainError);
    CHECK_THROWS_AS(range_count(worked_digest(), 2, 9), DomainError);
  }
}

TEST_SUITE("consensus") {
  TEST_CASE("vacuous threshold returns every stored unit bucket") {
    CHECK(consensus(worked_digest(), 0.35) == std::vector<FrequentValue>{{3, 4}, {4, 6}});
  }

  TEST_CASE("exact digest reports exactly the majority") {
    std::vector<std::uint64_t> readings{4, 4, 4, 4, 9, 12, 4};
    auto q = build(readings, 16, 100);
    CHECK(consensus(q, 0.5) == std::vector<FrequentValue>{{4, 5}});
  }

  TEST_CASE("planted heavy hitter among uniform noise") {
    std::mt19937_64 rng(77);
    std::vector<std::uint64_t> readings;
    for (int i = 0; i < 8000; ++i) readings.push_back(1 + rng() % 65536);
    for (int i = 0; i < 2000; ++i) readings.push_back(31337);
    std::shuffle(readings.begin(), readings.end(), rng);
    auto q = testsupport::random_merge_tree(rng, readings, DigestConfig::make(65536, 100));
    bool found = false;
    for (const auto& fv : consensus(q, 0.1)) found = found || fv.value == 31337;
    CHECK(found);
  }

  TEST_CASE("domain errors") {
    CHECK_THROWS_AS(consensus(QDigest(DigestConfig::make(8, 2)), 0.1), DomainError);
    CHECK_THROWS_AS(consensus(worked_digest(), 1.5), DomainError);
  }
}

TEST_SUITE("confidence_factor") {
  TEST_CASE("worked digest: root plus the internal [5,6] bucket") {
    auto c = confidence_factor(worked_digest());
    CHECK(c.path_weight == 3);
    CHECK(c.theta() == doctest::Approx(3.0 / 15.0));
  }

  TEST_CASE("leaf-only digest certifies zero error") {
    auto q = build({1, 3, 3, 7}, 8, 100);
    CHECK(confidence_factor(q).path_weight == 0);
    CHECK(confidence_factor(q).theta() == 0.0);
  }

  TEST_CASE("an internal answering bucket counts toward the certificate") {
    // Three readings of 1 folded into [1,2], three of 3 folded into [3,4].
    std::vector<Bucket> raw{{2, 3}, {3, 3}};
    auto q = QDigest::from_buckets(DigestConfig::make(4, 2), raw);
    SortedSample truth({1, 1, 1, 3, 3, 3});
    const auto x = quantile(q, 0.75).value;
    CHECK(x == 4);
    CHECK(truth.rank_error(0.75, x) == 2);
    CHECK(confidence_factor(q).path_weight >= 2);
  }

  TEST_CASE("dominates the actual error and stays under log sigma / k") {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 60; ++trial) {
      const std::uint64_t k = 5 + rng() % 60;
      auto readings = testsupport::random_readings(rng, 50 + rng() % 4000, 65536);
      auto q = testsupport::random_merge_tree(rng, readings, DigestConfig::make(65536, k));
      SortedSample truth(readings);
      const auto c = confidence_factor(q);
      CHECK(c.theta() <= q.config().epsilon());
      for (double f = 0.01; f < 1.0; f += 0.04) CHECK(truth.rank_error(f, quantile(q, f).value) <= c.path_weight);
    }
  }
}
