#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sealbid/coin.hpp"
#include "sealbid/crypto/merkle.hpp"
#include "sealbid/crypto/nitc.hpp"
#include "sealbid/crypto/rs.hpp"
#include "sealbid/mechanism.hpp"

namespace sealbid::crypto {

// The NP relation certifying that the platform's published digests and the
// delivered private outcomes are consistent with the committed bids and the
// auction rules.

using sealbid::PrivateOutcome;
using sealbid::buyer_outcome;
using sealbid::seller_outcome;

/// The committed payload i || v_i || r_i (the seller commits bot in the
/// value slot).
inline Bytes encode_bid_message(Identity id, const std::optional<Rational>& value,
                                const CoinString& coin) {
  ByteWriter w;
  w.u64(id.value);
  w.u8(value ? 1 : 0);
  if (value) w.str(value->str());
  w.u64(coin.bit_count());
  w.blob(coin.bytes());
  return w.take();
}

struct DecodedBidMessage {
  Identity id;
  std::optional<Rational> value;
  CoinString coin = CoinString::zero(8);
};

inline std::optional<DecodedBidMessage> decode_bid_message(const Bytes& message) {
  try {
    ByteReader r(message);
    DecodedBidMessage m;
    m.id = Identity{r.u64()};
    if (r.u8() != 0) m.value = Rational::parse(r.str());
    const std::uint64_t bits = r.u64();
    m.coin = CoinString(r.blob(), bits);
    if (!r.done()) return std::nullopt;
    return m;
  } catch (const Error&) {
    return std::nullopt;
  }
}

struct RelationStatement {
  MerkleDigest digest;        // over the RS codeword of c
  MerkleDigest digest_prime;  // over {i, c_i, pi_com, out_i}
  std::uint64_t n = 0;        // |I|
  CoinString platform_coin = CoinString::zero(8);  // r_P
};

/// One witness row: {c_j, pi_com_j, pi*_j, v_j, r_j, out_j} for identity j.
struct RelationEntry {
  Identity id;
  TimedCommitment commitment;
  bool forced = false;       // pi* is a forced-decryption proof
  Opening opening;           // valid when !forced
  ForcedOpening forced_opening;  // valid when forced
  std::optional<Rational> value;  // nullopt for the seller's bot slot
  CoinString coin = CoinString::zero(8);
  PrivateOutcome out;
};

struct RelationWitness {
  RsCodeword code;
  std::vector<RelationEntry> entries;  // order defines the vector c
};

/// Serialization of one tuple (i, c_i, pi_com_i) of the vector c.
inline Bytes commitment_tuple_bytes(const RelationEntry& e) {
  ByteWriter w;
  w.u64(e.id.value);
  write_commitment(w, e.commitment);
  return w.take();
}

inline void write_private_outcome(ByteWriter& w, const PrivateOutcome& o) {
  w.u8(o.is_seller ? 1 : 0);
  if (o.is_seller) {
    w.u64(static_cast<std::uint64_t>(o.items_sold));
    w.str(o.seller_revenue.str());
  } else {
    w.u8(static_cast<std::uint8_t>(o.allocation));
    w.str(o.payment.str());
  }
}

inline PrivateOutcome read_private_outcome(ByteReader& r) {
  PrivateOutcome o;
  o.is_seller = r.u8() != 0;
  if (o.is_seller) {
    o.items_sold = static_cast<long>(r.u64());
    o.seller_revenue = Rational::parse(r.str());
  } else {
    o.allocation = r.u8();
    o.payment = Rational::parse(r.str());
  }
  return o;
}

inline Bytes private_outcome_bytes(const PrivateOutcome& o) {
  ByteWriter w;
  write_private_outcome(w, o);
  return w.take();
}

/// Serialization of one tuple (i, c_i, pi_com_i, out_i) under digest'.
inline Bytes outcome_tuple_bytes(const RelationEntry& e) {
  ByteWriter w;
  w.u64(e.id.value);
  write_commitment(w, e.commitment);
  write_private_outcome(w, e.out);
  return w.take();
}

/// The flattened vector c as RS input symbols.
inline std::vector<std::uint32_t> witness_code_symbols(const RelationWitness& witness) {
  ByteWriter w;
  for (const auto& e : witness.entries) w.blob(commitment_tuple_bytes(e));
  return bytes_to_symbols(w.take());
}

struct RelationCheck {
  bool ok = true;
  int failing_bullet = 0;  // 1-7, or 0 when ok
  std::string diagnostic;

  explicit operator bool() const { return ok; }
};

inline RelationCheck relation_fail(int bullet, std::string what) {
  return RelationCheck{false, bullet, std::move(what)};
}

/// Checks all seven bullets of the relation against the given rules.
inline RelationCheck check_relation(const RelationStatement& statement,
                                    const RelationWitness& witness, const NitcCrs& crs,
                                    const AuctionRules& rules) {
  // 1: identities distinct, |I| = n
  std::set<Identity> seen;
  for (const auto& e : witness.entries)
    if (!seen.insert(e.id).second)
      return relation_fail(1, "duplicate identity " + std::to_string(e.id.value));
  if (witness.entries.size() != statement.n)
    return relation_fail(1, "identity count does not match n");

  // 2: code = RS.Encode(c)
  if (rs_encode(witness_code_symbols(witness)) != witness.code)
    return relation_fail(2, "codeword is not the encoding of the commitment vector");

  // 3: digest = VC.Digest(code)
  if (vc_digest(symbol_leaves(witness.code.symbols)).first != statement.digest)
    return relation_fail(3, "digest does not bind the codeword");

  // 4: digest' = VC.Digest({i, c_i, pi_com_i, out_i})
  {
    std::vector<Bytes> tuples;
    tuples.reserve(witness.entries.size());
    for (const auto& e : witness.entries) tuples.push_back(outcome_tuple_bytes(e));
    if (vc_digest(tuples).first != statement.digest_prime)
      return relation_fail(4, "digest' does not bind the outcome tuples");
  }

  // 5: every ComVf passes
  for (const auto& e : witness.entries)
    if (!nitc_comvf(crs, e.commitment))
      return relation_fail(5, "ComVf rejects commitment of " + std::to_string(e.id.value));

  // 6: every pi* passes DecVf or FDecVf for i || v_i || r_i
  for (const auto& e : witness.entries) {
    const Bytes message = encode_bid_message(e.id, e.value, e.coin);
    const bool good = e.forced ? nitc_fdecvf(crs, e.commitment, message, e.forced_opening)
                               : nitc_decvf(crs, e.commitment, message, e.opening);
    if (!good)
      return relation_fail(6, "opening proof fails for " + std::to_string(e.id.value));
  }

  // 7: outcomes equal the rules on v with r = (xor r_j) xor r_P
  {
    std::vector<CoinString> coins;
    coins.reserve(witness.entries.size() + 1);
    for (const auto& e : witness.entries) coins.push_back(e.coin);
    coins.push_back(statement.platform_coin);
    CoinString joint = xor_coin(coins);

    std::vector<Bid> bids;
    for (const auto& e : witness.entries)
      if (!e.id.is_seller()) {
        if (!e.value) return relation_fail(7, "buyer entry carries a bot value");
        bids.push_back({e.id, *e.value});
      }
    AuctionOutcome out = rules.run(BidVector(std::move(bids)), joint);
    for (const auto& e : witness.entries) {
      const PrivateOutcome expected =
          e.id.is_seller() ? seller_outcome(out) : buyer_outcome(out, e.id);
      if (!(e.out == expected))
        return relation_fail(7, "outcome mismatch for " + std::to_string(e.id.value));
    }
  }
  return RelationCheck{};
}

// -- witness / statement serialization ------------------------------------

inline void write_coin(ByteWriter& w, const CoinString& c) {
  w.u64(c.bit_count());
  w.blob(c.bytes());
}

inline CoinString read_coin(ByteReader& r) {
  const std::uint64_t bits = r.u64();
  return CoinString(r.blob(), bits);
}

inline void write_statement(ByteWriter& w, const RelationStatement& s) {
  write_merkle_digest(w, s.digest);
  write_merkle_digest(w, s.digest_prime);
  w.u64(s.n);
  write_coin(w, s.platform_coin);
}

inline RelationStatement read_statement(ByteReader& r) {
  RelationStatement s;
  s.digest = read_merkle_digest(r);
  s.digest_prime = read_merkle_digest(r);
  s.n = r.u64();
  s.platform_coin = read_coin(r);
  return s;
}

inline Bytes statement_bytes(const RelationStatement& s) {
  ByteWriter w;
  write_statement(w, s);
  return w.take();
}

inline void write_relation_entry(ByteWriter& w, const RelationEntry& e) {
  w.u64(e.id.value);
  write_commitment(w, e.commitment);
  w.u8(e.forced ? 1 : 0);
  if (e.forced)
    write_forced_opening(w, e.forced_opening);
  else
    write_opening(w, e.opening);
  w.u8(e.value ? 1 : 0);
  if (e.value) w.str(e.value->str());
  write_coin(w, e.coin);
  write_private_outcome(w, e.out);
}

inline RelationEntry read_relation_entry(ByteReader& r) {
  RelationEntry e;
  e.id = Identity{r.u64()};
  e.commitment = read_commitment(r);
  e.forced = r.u8() != 0;
  if (e.forced)
    e.forced_opening = read_forced_opening(r);
  else
    e.opening = read_opening(r);
  if (r.u8() != 0) e.value = Rational::parse(r.str());
  e.coin = read_coin(r);
  e.out = read_private_outcome(r);
  return e;
}

inline Bytes witness_bytes(const RelationWitness& witness) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(witness.code.symbols.size()));
  for (std::uint32_t s : witness.code.symbols) w.u32(s);
  w.u64(witness.code.message_len);
  w.u32(static_cast<std::uint32_t>(witness.entries.size()));
  for (const auto& e : witness.entries) write_relation_entry(w, e);
  return w.take();
}

inline RelationWitness witness_from_bytes(const Bytes& data) {
  ByteReader r(data);
  RelationWitness witness;
  std::vector<std::uint32_t> symbols(r.u32());
  for (auto& s : symbols) s = r.u32();
  witness.code.symbols = std::move(symbols);
  witness.code.message_len = r.u64();
  const std::uint32_t count = r.u32();
  for (std::uint32_t i = 0; i < count; ++i) witness.entries.push_back(read_relation_entry(r));
  return witness;
}

}  // namespace sealbid::crypto
