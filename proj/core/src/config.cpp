#include "qdigest/config.hpp"

#include <bit>
#include <string>

#include "qdigest/error.hpp"

namespace qdigest {

DigestConfig DigestConfig::make(std::uint64_t sigma, std::uint64_t k) {
  if (sigma < 2) throw DomainError("sigma must be at least 2, got " + std::to_string(sigma));
  if (sigma > (std::uint64_t{1} << kMaxLogSigma))
    throw DomainError("sigma above 2^62 is not supported");
  if (k == 0) throw DomainError("compression factor k must be positive");
  const auto log_sigma = static_cast<unsigned>(std::bit_width(std::bit_ceil(sigma))) - 1;
  return DigestConfig(sigma, log_sigma, k);
}

namespace {
__extension__ using u128 = unsigned __int128;
}

std::uint64_t DigestConfig::error_budget(std::uint64_t n) const {
  const auto num = static_cast<u128>(n) * log_sigma_;
  return static_cast<std::uint64_t>((num + k_ - 1) / k_);
}

}  // namespace qdigest
