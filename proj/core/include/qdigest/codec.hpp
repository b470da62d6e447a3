#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qdigest/digest.hpp"

namespace qdigest {

// Wire layout, all multi-byte integers big-endian:
//
//   0   u8   magic 0x51 ('Q')
//   1   u8   format version 0x01
//   2   u8   log2(sigma)
//   3   u64  n
//   11  u32  tuple count
//   15  ...  tuples in ascending id order, each log2(sigma)+1 id bits then
//            ceil(log2(n+1)) count bits, MSB first, zero-padded to a byte.

inline constexpr std::uint8_t kWireMagic = 0x51;
inline constexpr std::uint8_t kWireVersion = 0x01;
inline constexpr std::size_t kWireHeaderBytes = 15;

/// Bits used for a node id under the given sigma: ceil(log2(2*sigma)).
unsigned id_bits(unsigned log_sigma) noexcept;

/// Bits used for a count when the digest holds n readings: ceil(log2(n+1)).
unsigned count_bits(std::uint64_t n) noexcept;

/// Exact encoded size of a digest with `tuples` buckets.
std::size_t encoded_size(unsigned log_sigma, std::uint64_t n, std::size_t tuples) noexcept;

std::vector<std::uint8_t> encode(const QDigest& q);

/// Inverse of encode. The wire format carries sigma but not k; the caller
/// supplies the network-wide k. Rejects anything encode would not have
/// produced, throwing DecodeError naming the field and byte offset.
QDigest decode(std::span<const std::uint8_t> bytes, std::uint64_t k);

}  // namespace qdigest
