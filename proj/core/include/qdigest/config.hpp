#pragma once

#include <cstdint>

namespace qdigest {

/// Value domain and compression factor shared by every digest that will
/// ever be merged together.
///
/// Values live in [1, declared_sigma]. The conceptual tree is built over
/// [1, sigma] where sigma is declared_sigma rounded up to a power of two,
/// so node-id arithmetic stays closed.
class DigestConfig {
 public:
  static constexpr unsigned kMaxLogSigma = 62;

  /// Throws DomainError if sigma < 2, sigma > 2^62 or k == 0.
  static DigestConfig make(std::uint64_t sigma, std::uint64_t k);

  std::uint64_t sigma() const noexcept { return std::uint64_t{1} << log_sigma_; }
  std::uint64_t declared_sigma() const noexcept { return declared_sigma_; }
  unsigned log_sigma() const noexcept { return log_sigma_; }
  std::uint64_t k() const noexcept { return k_; }

  /// floor(n / k): the largest count an internal bucket may hold.
  std::uint64_t threshold(std::uint64_t n) const noexcept { return n / k_; }

  /// A-priori relative error log2(sigma) / k.
  double epsilon() const noexcept { return static_cast<double>(log_sigma_) / static_cast<double>(k_); }

  /// ceil(log2(sigma) * n / k), the absolute rank error any query may carry.
  std::uint64_t error_budget(std::uint64_t n) const;

  friend bool operator==(const DigestConfig&, const DigestConfig&) = default;

 private:
  DigestConfig(std::uint64_t declared_sigma, unsigned log_sigma, std::uint64_t k)
      : declared_sigma_(declared_sigma), log_sigma_(log_sigma), k_(k) {}

  std::uint64_t declared_sigma_;
  unsigned log_sigma_;
  std::uint64_t k_;
};

}  // namespace qdigest
