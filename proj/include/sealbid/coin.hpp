#pragma once

#include <cstdint>
#include <vector>

#include "sealbid/bytes.hpp"
#include "sealbid/errors.hpp"
#include "sealbid/rng.hpp"

namespace sealbid {

/// Fixed-length random bit string: per-player protocol randomness r_i and
/// the joint auction coin r. Length is the configured security parameter.
class CoinString {
 public:
  CoinString(Bytes bits, std::size_t bit_count) : bytes_(std::move(bits)), bits_(bit_count) {
    if (bytes_.size() != (bits_ + 7) / 8)
      throw LengthMismatch("coin: byte buffer does not match bit length");
  }

  static CoinString zero(std::size_t bit_count) {
    return CoinString(Bytes((bit_count + 7) / 8, 0), bit_count);
  }

  static CoinString sample(Rng& rng, std::size_t bit_count) {
    Bytes b = rng.bytes((bit_count + 7) / 8);
    if (bit_count % 8 != 0) b.back() &= static_cast<std::uint8_t>(0xff << (8 - bit_count % 8));
    return CoinString(std::move(b), bit_count);
  }

  /// Little helper for tests on reduced coin spaces: the k-th coin of a
  /// small exhaustive sweep.
  static CoinString from_u64(std::uint64_t value, std::size_t bit_count) {
    CoinString c = zero(bit_count);
    for (std::size_t i = 0; i < bit_count && i < 64; ++i)
      if (value >> i & 1) c.bytes_[i / 8] |= static_cast<std::uint8_t>(0x80 >> (i % 8));
    return c;
  }

  std::size_t bit_count() const { return bits_; }
  const Bytes& bytes() const { return bytes_; }

  /// Deterministic RNG seeded from this coin; drives tie-breaking.
  Rng rng() const { return Rng(bytes_); }

  friend bool operator==(const CoinString& a, const CoinString& b) {
    return a.bits_ == b.bits_ && a.bytes_ == b.bytes_;
  }

 private:
  Bytes bytes_;
  std::size_t bits_;
};

/// Bitwise XOR of equal-length coins; the joint auction randomness is
/// r = (XOR of all player coins) XOR r_P.
inline CoinString xor_coin(const std::vector<CoinString>& coins) {
  if (coins.empty()) throw LengthMismatch("xor_coin: empty input");
  Bytes acc = coins.front().bytes();
  for (std::size_t i = 1; i < coins.size(); ++i) {
    if (coins[i].bit_count() != coins.front().bit_count())
      throw LengthMismatch("xor_coin: coin lengths differ");
    acc = xor_bytes(acc, coins[i].bytes());
  }
  return CoinString(std::move(acc), coins.front().bit_count());
}

}  // namespace sealbid
