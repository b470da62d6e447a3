#include "qdigest/codec.hpp"

#include <bit>
#include <string>

#include "qdigest/error.hpp"

namespace qdigest {
namespace {

class BitWriter {
 public:
  explicit BitWriter(std::vector<std::uint8_t>& out) : out_(out) {}

  void put(std::uint64_t value, unsigned bits) {
    for (unsigned i = bits; i-- > 0;) {
      if (fill_ == 0) out_.push_back(0);
      if ((value >> i) & 1U) out_.back() |= static_cast<std::uint8_t>(0x80U >> fill_);
      fill_ = (fill_ + 1) & 7U;
    }
  }

 private:
  std::vector<std::uint8_t>& out_;
  unsigned fill_ = 0;  // bits already used in out_.back()
};

class BitReader {
 public:
  BitReader(std::span<const std::uint8_t> bytes, std::size_t start) : bytes_(bytes), bit_(start * 8) {}

  std::uint64_t get(unsigned bits) {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < bits; ++i, ++bit_) v = (v << 1) | ((bytes_[bit_ >> 3] >> (7 - (bit_ & 7))) & 1U);
    return v;
  }

  std::size_t byte_offset() const noexcept { return bit_ >> 3; }
  std::size_t bit_position() const noexcept { return bit_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t bit_;
};

void put_be(std::vector<std::uint8_t>& out, std::uint64_t v, unsigned bytes) {
  for (unsigned i = bytes; i-- > 0;) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_be(std::span<const std::uint8_t> in, std::size_t at, unsigned bytes) {
  std::uint64_t v = 0;
  for (unsigned i = 0; i < bytes; ++i) v = (v << 8) | in[at + i];
  return v;
}

}  // namespace

unsigned id_bits(unsigned log_sigma) noexcept { return log_sigma + 1; }

unsigned count_bits(std::uint64_t n) noexcept { return static_cast<unsigned>(std::bit_width(n)); }

std::size_t encoded_size(unsigned log_sigma, std::uint64_t n, std::size_t tuples) noexcept {
  const std::uint64_t bits = static_cast<std::uint64_t>(tuples) * (id_bits(log_sigma) + count_bits(n));
  return kWireHeaderBytes + static_cast<std::size_t>((bits + 7) / 8);
}

std::vector<std::uint8_t> encode(const QDigest& q) {
  const unsigned log_sigma = q.config().log_sigma();
  std::vector<std::uint8_t> out;
  out.reserve(encoded_size(log_sigma, q.total(), q.size()));
  out.push_back(kWireMagic);
  out.push_back(kWireVersion);
  out.push_back(static_cast<std::uint8_t>(log_sigma));
  put_be(out, q.total(), 8);
  put_be(out, q.size(), 4);
  BitWriter w(out);
  const unsigned ib = id_bits(log_sigma);
  const unsigned cb = count_bits(q.total());
  for (const auto& b : q.buckets()) {
    w.put(b.id, ib);
    w.put(b.count, cb);
  }
  return out;
}

QDigest decode(std::span<const std::uint8_t> bytes, std::uint64_t k) {
  if (bytes.size() < kWireHeaderBytes)
    throw DecodeError("header", bytes.size(), "truncated header, " + std::to_string(bytes.size()) + " bytes");
  if (bytes[0] != kWireMagic) throw DecodeError("magic", 0, "expected 0x51");
  if (bytes[1] != kWireVersion) throw DecodeError("version", 1, "unsupported version " + std::to_string(bytes[1]));
  const unsigned log_sigma = bytes[2];
  if (log_sigma < 1 || log_sigma > DigestConfig::kMaxLogSigma)
    throw DecodeError("log_sigma", 2, "log2(sigma) " + std::to_string(log_sigma) + " out of range");
  const std::uint64_t n = get_be(bytes, 3, 8);
  const std::uint64_t tuples = get_be(bytes, 11, 4);

  const unsigned ib = id_bits(log_sigma);
  const unsigned cb = count_bits(n);
  const std::uint64_t payload_bits = tuples * (ib + cb);
  const std::uint64_t expected = kWireHeaderBytes + (payload_bits + 7) / 8;
  if (bytes.size() < expected)
    throw DecodeError("payload", bytes.size(),
                      "truncated payload, need " + std::to_string(expected) + " bytes, have " +
                          std::to_string(bytes.size()));
  if (bytes.size() > expected)
    throw DecodeError("payload", expected, std::to_string(bytes.size() - expected) + " trailing bytes");

  const DigestConfig cfg = DigestConfig::make(std::uint64_t{1} << log_sigma, k);
  const std::uint64_t max_id = 2 * cfg.sigma() - 1;
  std::vector<Bucket> buckets;
  buckets.reserve(tuples);
  BitReader r(bytes, kWireHeaderBytes);
  std::uint64_t sum = 0;
  for (std::uint64_t i = 0; i < tuples; ++i) {
    const std::size_t at = r.byte_offset();
    const std::uint64_t id = r.get(ib);
    if (id == 0 || id > max_id)
      throw DecodeError("tuple id", at, "id " + std::to_string(id) + " outside [1, " + std::to_string(max_id) + "]");
    if (!buckets.empty() && id <= buckets.back().id)
      throw DecodeError("tuple id", at,
                        id == buckets.back().id ? "duplicate id " + std::to_string(id)
                                                : "ids not ascending at " + std::to_string(id));
    const std::size_t count_at = r.byte_offset();
    const std::uint64_t count = r.get(cb);
    if (count == 0) throw DecodeError("tuple count", count_at, "zero count for id " + std::to_string(id));
    if (sum + count < sum) throw DecodeError("tuple count", count_at, "counts overflow");
    sum += count;
    buckets.push_back({id, count});
  }
  if (sum != n)
    throw DecodeError("n", 3, "tuple counts sum to " + std::to_string(sum) + ", header says " + std::to_string(n));
  if (r.bit_position() % 8 != 0) {
    const std::size_t at = r.byte_offset();
    if (r.get(8 - static_cast<unsigned>(r.bit_position() % 8)) != 0)
      throw DecodeError("padding", at, "nonzero padding bits");
  }
  return QDigest::from_buckets(cfg, buckets);
}

}  // namespace qdigest
