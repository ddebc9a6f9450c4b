#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "sealbid/crypto/bigint.hpp"
#include "sealbid/errors.hpp"
#include "sealbid/hash.hpp"
#include "sealbid/rng.hpp"

namespace sealbid::crypto {

// Non-interactive timed commitment: RSW time-lock with a trusted-setup
// shortcut h = g^(2^T), hash-tag binding, and a Wesolowski-style proof of
// exponentiation for forced decryption.
//
// The committer encrypts under K = H(w) with w = h^s; anyone can recover w
// as u^(2^T) with T sequential squarings. The tag H(m || w) binds the
// message on both the cooperative and the forced path.
//
// This instantiation gives correctness, computational binding, forced-
// decryption soundness and public verifiability at desk scale. It does NOT
// claim the IND-CCA non-malleability of a full NITC construction; the
// test profile (512-bit moduli) is explicitly insecure and exists for CI.

inline constexpr std::size_t kMaxMessageBytes = 512;

struct NitcCrs {
  BigInt modulus;           // N, product of two safe primes
  BigInt base;              // g, a quadratic residue mod N
  BigInt shortcut;          // h = g^(2^T) mod N
  std::uint64_t difficulty = 0;  // T
  std::string hash_id = "sha256";
};

struct TimedCommitment {
  BigInt u;     // g^s
  Bytes ct;     // m xor keystream(H(h^s))
  Digest256 tag;  // H(m || h^s)
};

/// pi_com is structural only in this instantiation; ComVf checks the
/// commitment fields directly.
struct CommitmentProof {};

struct Opening {
  Bytes message;
  BigInt exponent;  // s
};

/// Wesolowski proof that w = u^(2^T): ell is the Fiat-Shamir challenge
/// prime, quotient_power = u^floor(2^T / ell).
struct ExponentiationProof {
  BigInt w;
  BigInt quotient_power;
};

struct ForcedOpening {
  Bytes message;
  ExponentiationProof poe;
  /// Set when the ciphertext decrypts but the tag does not match: the
  /// commitment was adversarial. The extracted bytes are still treated as
  /// the committed message.
  bool tag_mismatch = false;
};

namespace detail {

inline Bytes keystream_for(const BigInt& w, std::size_t length) {
  return sha256_keystream(sha256(bigint_bytes(w)), length);
}

inline Digest256 binding_tag(const Bytes& message, const BigInt& w) {
  ByteWriter buf;
  buf.blob(message);
  write_bigint(buf, w);
  return sha256(buf.take());
}

/// Fiat-Shamir challenge: next prime after H(u || w || T) truncated to 128 bits.
inline BigInt poe_challenge(const BigInt& u, const BigInt& w, std::uint64_t difficulty) {
  ByteWriter buf;
  write_bigint(buf, u);
  write_bigint(buf, w);
  buf.u64(difficulty);
  Digest256 d = sha256(buf.take());
  BigInt seed;
  mpz_import(seed.get_mpz_t(), 16, 1, 1, 1, 0, d.data());
  return next_prime(seed);
}

/// T sequential squarings; the sequential path of FDec.
inline BigInt repeated_square(const BigInt& u, std::uint64_t difficulty, const BigInt& modulus) {
  BigInt acc = u % modulus;
  for (std::uint64_t i = 0; i < difficulty; ++i) acc = acc * acc % modulus;
  return acc;
}

}  // namespace detail

inline NitcCrs nitc_gen(std::size_t modulus_bits, std::uint64_t difficulty, Rng& rng) {
  if (difficulty == 0) throw ConfigInvalid("nitc_gen: difficulty T must be positive");
  if (modulus_bits < 32) throw ConfigInvalid("nitc_gen: modulus too small");
  NitcCrs crs;
  crs.difficulty = difficulty;
  BigInt p = random_safe_prime(rng, modulus_bits / 2);
  BigInt q = p;
  while (q == p) q = random_safe_prime(rng, modulus_bits / 2);
  crs.modulus = p * q;  // factorization dropped on return
  BigInt r = random_below(rng, crs.modulus - 3) + 2;
  crs.base = r * r % crs.modulus;
  if (crs.base <= 1) crs.base = 4;
  crs.shortcut = detail::repeated_square(crs.base, difficulty, crs.modulus);
  return crs;
}

/// Re-targets a CRS to a different difficulty by recomputing the shortcut
/// the slow way. Needs no trapdoor; linear in the new T.
inline NitcCrs nitc_with_difficulty(const NitcCrs& crs, std::uint64_t difficulty) {
  if (difficulty == 0) throw ConfigInvalid("nitc_with_difficulty: T must be positive");
  NitcCrs out = crs;
  out.difficulty = difficulty;
  out.shortcut = detail::repeated_square(crs.base, difficulty, crs.modulus);
  return out;
}

inline bool nitc_comvf(const NitcCrs& crs, const TimedCommitment& cm, const CommitmentProof& = {}) {
  if (cm.u <= 1 || cm.u >= crs.modulus) return false;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), cm.u.get_mpz_t(), crs.modulus.get_mpz_t());
  if (g != 1) return false;
  return cm.ct.size() <= kMaxMessageBytes;
}

inline std::pair<TimedCommitment, Opening> nitc_com(const NitcCrs& crs, const Bytes& message,
                                                    Rng& rng) {
  if (message.size() > kMaxMessageBytes)
    throw MalformedCommitment("nitc_com: message exceeds one block");
  Opening opening;
  opening.message = message;
  opening.exponent = random_bits(rng, 2 * mpz_sizeinbase(crs.modulus.get_mpz_t(), 2));
  TimedCommitment cm;
  cm.u = powm(crs.base, opening.exponent, crs.modulus);
  const BigInt w = powm(crs.shortcut, opening.exponent, crs.modulus);
  cm.ct = xor_bytes(message, detail::keystream_for(w, message.size()));
  cm.tag = detail::binding_tag(message, w);
  return {cm, opening};
}

inline bool nitc_decvf(const NitcCrs& crs, const TimedCommitment& cm, const Bytes& message,
                       const Opening& opening) {
  if (!nitc_comvf(crs, cm)) return false;
  if (powm(crs.base, opening.exponent, crs.modulus) != cm.u) return false;
  const BigInt w = powm(crs.shortcut, opening.exponent, crs.modulus);
  if (message.size() != cm.ct.size()) return false;
  if (xor_bytes(cm.ct, detail::keystream_for(w, cm.ct.size())) != message) return false;
  return detail::binding_tag(message, w) == cm.tag;
}

/// Forced decryption: recovers w = u^(2^T) sequentially, proves it, and
/// decrypts. A tag mismatch is surfaced, not thrown; the extracted bytes
/// stand in for the committed message.
inline ForcedOpening nitc_fdec(const NitcCrs& crs, const TimedCommitment& cm) {
  if (!nitc_comvf(crs, cm)) throw MalformedCommitment("nitc_fdec: ComVf rejects the commitment");
  ForcedOpening out;
  out.poe.w = detail::repeated_square(cm.u, crs.difficulty, crs.modulus);
  const BigInt ell = detail::poe_challenge(cm.u, out.poe.w, crs.difficulty);
  const BigInt quotient = (BigInt(1) << static_cast<unsigned long>(crs.difficulty)) / ell;
  out.poe.quotient_power = powm(cm.u, quotient, crs.modulus);
  out.message = xor_bytes(cm.ct, detail::keystream_for(out.poe.w, cm.ct.size()));
  out.tag_mismatch = detail::binding_tag(out.message, out.poe.w) != cm.tag;
  return out;
}

inline bool nitc_fdecvf(const NitcCrs& crs, const TimedCommitment& cm, const Bytes& message,
                        const ForcedOpening& forced) {
  if (!nitc_comvf(crs, cm)) return false;
  // pi^ell * u^(2^T mod ell) == w
  const BigInt ell = detail::poe_challenge(cm.u, forced.poe.w, crs.difficulty);
  const BigInt remainder = powm(BigInt(2), BigInt(static_cast<unsigned long>(crs.difficulty)), ell);
  const BigInt lhs = powm(forced.poe.quotient_power, ell, crs.modulus) *
                         powm(cm.u, remainder, crs.modulus) % crs.modulus;
  if (lhs != forced.poe.w) return false;
  if (message.size() != cm.ct.size()) return false;
  if (xor_bytes(cm.ct, detail::keystream_for(forced.poe.w, cm.ct.size())) != message) return false;
  return detail::binding_tag(message, forced.poe.w) == cm.tag;
}

// -- canonical serialization --------------------------------------------

inline void write_commitment(ByteWriter& w, const TimedCommitment& cm) {
  write_bigint(w, cm.u);
  w.blob(cm.ct);
  w.raw(digest_bytes(cm.tag));
}

inline TimedCommitment read_commitment(ByteReader& r) {
  TimedCommitment cm;
  cm.u = read_bigint(r);
  cm.ct = r.blob();
  Bytes tag = Bytes(32);
  for (auto& b : tag) b = r.u8();
  std::copy(tag.begin(), tag.end(), cm.tag.begin());
  return cm;
}

inline Bytes commitment_bytes(const TimedCommitment& cm) {
  ByteWriter w;
  write_commitment(w, cm);
  return w.take();
}

inline void write_opening(ByteWriter& w, const Opening& o) {
  w.blob(o.message);
  write_bigint(w, o.exponent);
}

inline Opening read_opening(ByteReader& r) {
  Opening o;
  o.message = r.blob();
  o.exponent = read_bigint(r);
  return o;
}

inline void write_forced_opening(ByteWriter& w, const ForcedOpening& f) {
  w.blob(f.message);
  write_bigint(w, f.poe.w);
  write_bigint(w, f.poe.quotient_power);
  w.u8(f.tag_mismatch ? 1 : 0);
}

inline ForcedOpening read_forced_opening(ByteReader& r) {
  ForcedOpening f;
  f.message = r.blob();
  f.poe.w = read_bigint(r);
  f.poe.quotient_power = read_bigint(r);
  f.tag_mismatch = r.u8() != 0;
  return f;
}

}  // namespace sealbid::crypto
