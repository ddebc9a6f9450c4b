#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "sealbid/bytes.hpp"
#include "sealbid/rng.hpp"

namespace sealbid::crypto {

using BigInt = mpz_class;

/// Big-endian magnitude, length-prefixed. Non-negative integers only.
inline void write_bigint(ByteWriter& w, const BigInt& v) {
  std::size_t count = 0;
  Bytes buf((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8);
  if (!buf.empty()) mpz_export(buf.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
  buf.resize(count);
  w.blob(buf);
}

inline BigInt read_bigint(ByteReader& r) {
  Bytes buf = r.blob();
  BigInt v;
  if (!buf.empty()) mpz_import(v.get_mpz_t(), buf.size(), 1, 1, 1, 0, buf.data());
  return v;
}

inline Bytes bigint_bytes(const BigInt& v) {
  ByteWriter w;
  write_bigint(w, v);
  return w.take();
}

inline BigInt powm(const BigInt& base, const BigInt& exp, const BigInt& mod) {
  BigInt out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return out;
}

inline bool probably_prime(const BigInt& v) {
  return mpz_probab_prime_p(v.get_mpz_t(), 30) != 0;
}

inline BigInt next_prime(const BigInt& v) {
  BigInt out;
  mpz_nextprime(out.get_mpz_t(), v.get_mpz_t());
  return out;
}

/// Uniform-ish integer with exactly `bits` bits (top bit set).
inline BigInt random_bits(Rng& rng, std::size_t bits) {
  Bytes raw = rng.bytes((bits + 7) / 8);
  BigInt v;
  mpz_import(v.get_mpz_t(), raw.size(), 1, 1, 1, 0, raw.data());
  BigInt top = BigInt(1) << static_cast<unsigned long>(bits - 1);
  return top + v % top;
}

inline BigInt random_below(Rng& rng, const BigInt& bound) {
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2) + 64;
  Bytes raw = rng.bytes((bits + 7) / 8);
  BigInt v;
  mpz_import(v.get_mpz_t(), raw.size(), 1, 1, 1, 0, raw.data());
  return v % bound;
}

/// Safe prime p = 2q + 1 with both p, q prime; p has exactly `bits` bits.
inline BigInt random_safe_prime(Rng& rng, std::size_t bits) {
  BigInt q = random_bits(rng, bits - 1);
  while (true) {
    q = next_prime(q);
    BigInt p = 2 * q + 1;
    if (mpz_sizeinbase(p.get_mpz_t(), 2) > bits) {
      q = random_bits(rng, bits - 1);
      continue;
    }
    if (probably_prime(p)) return p;
  }
}

}  // namespace sealbid::crypto
