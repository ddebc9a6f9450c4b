#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sealbid/coin.hpp"
#include "sealbid/crypto/aok.hpp"
#include "sealbid/crypto/merkle.hpp"
#include "sealbid/crypto/nitc.hpp"
#include "sealbid/crypto/por.hpp"
#include "sealbid/crypto/relation.hpp"
#include "sealbid/crypto/rs.hpp"
#include "sealbid/incentives.hpp"
#include "sealbid/mechanism.hpp"
#include "sealbid/trace.hpp"

namespace sealbid {

// The robust auction protocol, simulated as a deterministic sequence of
// synchronous rounds over private player<->platform channels plus an
// append-only broadcast log. Wall-clock deadlines T1..T4 become logical
// round indices; a player "times out" when its expected message is absent
// at the round boundary.

struct Blockchain {
  struct Entry {
    PlayerRef author;
    Bytes payload;
  };
  std::vector<Entry> log;  // append-only

  void post(PlayerRef author, Bytes payload) { log.push_back({author, std::move(payload)}); }
};

struct ProtocolConfig {
  std::shared_ptr<const AuctionRules> rules;
  std::size_t lambda_bits = 128;
  std::size_t kappa = 64;  // PoR challenge size, capped at the codeword length
  crypto::NitcCrs nitc;
  std::size_t t1 = 1, t2 = 2, t3 = 3, t4 = 4;  // logical deadlines
  std::uint64_t seed = 1;

  void validate() const {
    if (!rules) throw ConfigInvalid("protocol config: no auction rules");
    if (!(t1 < t2 && t2 < t3 && t3 < t4))
      throw ConfigInvalid("protocol config: deadlines must satisfy T1 < T2 < T3 < T4");
    if (lambda_bits == 0 || kappa == 0)
      throw ConfigInvalid("protocol config: lambda and kappa must be positive");
    if (nitc.difficulty == 0) throw ConfigInvalid("protocol config: NITC crs missing");
  }
};

// ---------------------------------------------------------------------------
// Adversary scripts. A script only touches corrupted players' messages;
// honest identities cannot be hijacked.

enum class AttackKind {
  None,
  WithholdOpening,     // corrupted buyer never opens; robustness: forced decryption
  GarbageCommitment,   // corrupted buyer sends a commitment ComVf rejects
  FakeBidInjection,    // corrupted buyer submits extra fresh identities
  SellerShill,         // corrupted seller submits buyer-identity commitments
  DuplicateIdentity,   // corrupted buyer submits its identity twice
  DigestEquivocation,  // corrupted platform shows one player a different digest
  OutcomeMutation,     // corrupted platform doctors one buyer's outcome
  DroppedHonestTuple,  // corrupted platform omits an honest commitment from c
};

struct AdversaryScript {
  AttackKind kind = AttackKind::None;
  std::string label = "honest";
  std::set<Identity> corrupted_buyers;
  bool corrupt_seller = false;
  bool corrupt_platform = false;
  Identity target{};           // subject buyer (attack-dependent)
  std::vector<Bid> fake_bids;  // FakeBidInjection / SellerShill

  static AdversaryScript none() { return {}; }
  static AdversaryScript withhold_opening(Identity who) {
    AdversaryScript s;
    s.kind = AttackKind::WithholdOpening;
    s.label = "withhold-opening";
    s.corrupted_buyers = {who};
    s.target = who;
    return s;
  }
  static AdversaryScript garbage_commitment(Identity who) {
    AdversaryScript s;
    s.kind = AttackKind::GarbageCommitment;
    s.label = "garbage-commitment";
    s.corrupted_buyers = {who};
    s.target = who;
    return s;
  }
  static AdversaryScript fake_bid_injection(Identity who, std::vector<Bid> fakes) {
    AdversaryScript s;
    s.kind = AttackKind::FakeBidInjection;
    s.label = "fake-bids";
    s.corrupted_buyers = {who};
    s.target = who;
    s.fake_bids = std::move(fakes);
    return s;
  }
  static AdversaryScript seller_shill(std::vector<Bid> fakes) {
    AdversaryScript s;
    s.kind = AttackKind::SellerShill;
    s.label = "seller-shill";
    s.corrupt_seller = true;
    s.fake_bids = std::move(fakes);
    return s;
  }
  static AdversaryScript duplicate_identity(Identity who) {
    AdversaryScript s;
    s.kind = AttackKind::DuplicateIdentity;
    s.label = "duplicate-identity";
    s.corrupted_buyers = {who};
    s.target = who;
    return s;
  }
  static AdversaryScript digest_equivocation(Identity victim) {
    AdversaryScript s;
    s.kind = AttackKind::DigestEquivocation;
    s.label = "digest-equivocation";
    s.corrupt_platform = true;
    s.target = victim;
    return s;
  }
  static AdversaryScript outcome_mutation(Identity victim) {
    AdversaryScript s;
    s.kind = AttackKind::OutcomeMutation;
    s.label = "mutate-outcome";
    s.corrupt_platform = true;
    s.target = victim;
    return s;
  }
  static AdversaryScript dropped_honest_tuple(Identity victim) {
    AdversaryScript s;
    s.kind = AttackKind::DroppedHonestTuple;
    s.label = "drop-honest-tuple";
    s.corrupt_platform = true;
    s.target = victim;
    return s;
  }
};

// ---------------------------------------------------------------------------

namespace proto {

struct PlayerState {
  Identity id;
  std::optional<Rational> value;  // nullopt for the seller
  CoinString coin = CoinString::zero(8);
  crypto::TimedCommitment commitment;
  crypto::Opening opening;
  bool suppressed = false;   // notified at step (b); rejects
  bool rejected = false;
  bool opened = false;       // provided a valid opening at step (e)
  // locally received platform values, checked against the blockchain
  std::optional<std::uint64_t> seen_n;
  std::optional<crypto::MerkleDigest> seen_digest;
  std::optional<CoinString> seen_platform_coin;
  std::optional<crypto::MerkleDigest> seen_digest_prime;
  bool aok_ok = false;
  bool outcome_ok = false;   // step (i) membership verification
  std::optional<PrivateOutcome> delivered;
};

inline Bytes coin_payload(const CoinString& c) {
  ByteWriter w;
  crypto::write_coin(w, c);
  return w.take();
}

}  // namespace proto

/// Executes the full protocol. Honest values drive honest buyers; the
/// script overrides corrupted players. Trace-level failures are recorded in
/// the returned trace, never thrown.
inline ExecutionTrace run_protocol(const ProtocolConfig& config, const BidVector& honest_values,
                                   const AdversaryScript& script = AdversaryScript::none()) {
  using namespace crypto;
  config.validate();
  const AuctionRules& rules = *config.rules;

  ExecutionTrace trace;
  trace.platform_honest = !script.corrupt_platform;
  for (const auto& id : script.corrupted_buyers) trace.strategic_identities.insert(id);
  for (const auto& fake : script.fake_bids) trace.strategic_identities.insert(fake.id);
  if (script.corrupt_seller) trace.strategic_identities.insert(Identity{Identity::kSeller});

  Blockchain chain;
  Rng master(config.seed);
  Rng platform_rng(master.derive_seed());

  // --- step (a), round 0: commitments over private channels -------------
  struct SubmittedTuple {
    Identity claimed_id;
    PlayerRef sender;
    crypto::TimedCommitment commitment;
  };
  std::vector<SubmittedTuple> submissions;
  std::map<Identity, proto::PlayerState> players;  // one state per real player

  auto commit_player = [&](Identity id, std::optional<Rational> value, Rng& rng) {
    proto::PlayerState st;
    st.id = id;
    st.value = std::move(value);
    st.coin = CoinString::sample(rng, config.lambda_bits);
    auto [cm, opening] =
        nitc_com(config.nitc, encode_bid_message(id, st.value, st.coin), rng);
    st.commitment = cm;
    st.opening = opening;
    return st;
  };

  std::vector<Identity> buyer_ids = honest_values.identities();
  std::sort(buyer_ids.begin(), buyer_ids.end());
  std::map<Identity, Rng> player_rngs;
  for (Identity id : buyer_ids) player_rngs.emplace(id, Rng(master.derive_seed()));
  Rng seller_rng(master.derive_seed());
  Rng fake_rng(master.derive_seed());

  for (Identity id : buyer_ids) {
    Rng& rng = player_rngs.at(id);
    proto::PlayerState st = commit_player(id, *honest_values.bid_of(id), rng);
    if (script.kind == AttackKind::GarbageCommitment && id == script.target)
      st.commitment.u = 1;  // ComVf rejects
    submissions.push_back({id, PlayerRef::player(id), st.commitment});
    trace.record(0, PlayerRef::player(id), PlayerRef::the_platform(), "commit",
                 commitment_bytes(st.commitment));
    if (script.kind == AttackKind::DuplicateIdentity && id == script.target) {
      proto::PlayerState twin = commit_player(id, *honest_values.bid_of(id), rng);
      submissions.push_back({id, PlayerRef::player(id), twin.commitment});
      trace.record(0, PlayerRef::player(id), PlayerRef::the_platform(), "commit",
                   commitment_bytes(twin.commitment));
    }
    players.emplace(id, std::move(st));
  }

  // the seller commits 0 || bot || r_0
  proto::PlayerState seller = commit_player(Identity{Identity::kSeller}, std::nullopt, seller_rng);
  submissions.push_back({seller.id, PlayerRef::seller(), seller.commitment});
  trace.record(0, PlayerRef::seller(), PlayerRef::the_platform(), "commit",
               commitment_bytes(seller.commitment));
  players.emplace(seller.id, std::move(seller));

  // corrupted players add fake identities (buyer injection or seller shills)
  for (const auto& fake : script.fake_bids) {
    proto::PlayerState st = commit_player(fake.id, fake.amount, fake_rng);
    PlayerRef sender = script.corrupt_seller ? PlayerRef::seller() : PlayerRef::player(script.target);
    submissions.push_back({fake.id, sender, st.commitment});
    trace.record(0, sender, PlayerRef::the_platform(), "commit",
                 commitment_bytes(st.commitment));
    players.emplace(fake.id, std::move(st));
  }

  // --- step (b), T1: filter, suppress duplicates -------------------------
  std::vector<Identity> roster;  // I, sorted
  {
    std::map<Identity, std::vector<std::size_t>> by_id;
    for (std::size_t i = 0; i < submissions.size(); ++i) {
      const auto& sub = submissions[i];
      if (!nitc_comvf(config.nitc, sub.commitment)) {
        if (players.count(sub.claimed_id)) players.at(sub.claimed_id).suppressed = true;
        continue;
      }
      if (sub.claimed_id.is_seller() && !(sub.sender == PlayerRef::seller())) continue;
      by_id[sub.claimed_id].push_back(i);
    }
    for (auto& [id, indices] : by_id) {
      if (indices.size() > 1) {
        // keep one uniformly, notify the rest (the player rejects)
        std::size_t keep = platform_rng.below(indices.size());
        indices = {indices[keep]};
        players.at(id).suppressed = true;
        trace.record(config.t1, PlayerRef::the_platform(), PlayerRef::player(id), "suppress",
                     {});
      }
      if (script.kind == AttackKind::DroppedHonestTuple && id == script.target) continue;
      roster.push_back(id);
      // the roster entry's commitment is the kept submission
      players.at(id).commitment = submissions[indices.front()].commitment;
    }
  }

  auto mark_reject = [&](proto::PlayerState& st) { st.rejected = true; };
  for (auto& [id, st] : players)
    if (st.suppressed) mark_reject(st);

  // --- step (c): encode, digest, announce --------------------------------
  RelationWitness witness;
  for (Identity id : roster) {
    RelationEntry e;
    e.id = id;
    e.commitment = players.at(id).commitment;
    witness.entries.push_back(e);
  }
  witness.code = rs_encode(witness_code_symbols(witness));
  auto [digest, aux] = vc_digest(symbol_leaves(witness.code.symbols));
  CoinString platform_coin = CoinString::sample(platform_rng, config.lambda_bits);
  const std::uint64_t roster_n = roster.size();

  auto announce = [&](proto::PlayerState& st) {
    if (st.rejected) return;
    MerkleDigest shown = digest;
    if (script.kind == AttackKind::DigestEquivocation && st.id == script.target)
      shown.root[0] ^= 0x5a;
    st.seen_n = roster_n;
    st.seen_digest = shown;
    st.seen_platform_coin = platform_coin;
    ByteWriter w;
    w.u64(roster_n);
    write_merkle_digest(w, shown);
    write_coin(w, platform_coin);
    trace.record(config.t1, PlayerRef::the_platform(),
                 st.id.is_seller() ? PlayerRef::seller() : PlayerRef::player(st.id), "announce",
                 w.take());
  };
  for (auto& [id, st] : players) announce(st);

  // --- steps (d)-(e), T2..T3: retrievability challenges, then openings ---
  const std::size_t codeword_len = witness.code.symbols.size();
  const std::size_t kappa = std::min(config.kappa, codeword_len);
  auto challenge_round = [&](proto::PlayerState& st, Rng& rng) {
    if (st.rejected || !st.seen_digest) {
      if (!st.rejected && !st.seen_digest) mark_reject(st);  // timeout
      return;
    }
    auto query = por_challenge(rng, kappa, codeword_len);
    ByteWriter qw;
    for (std::size_t q : query) qw.u64(q);
    trace.record(config.t2, st.id.is_seller() ? PlayerRef::seller() : PlayerRef::player(st.id),
                 PlayerRef::the_platform(), "por-challenge", qw.take());
    PorResponse resp = por_respond(aux, query);
    ByteWriter rw;
    write_por_response(rw, resp);
    trace.record(config.t2, PlayerRef::the_platform(),
                 st.id.is_seller() ? PlayerRef::seller() : PlayerRef::player(st.id),
                 "por-response", rw.take());
    if (!por_verify(*st.seen_digest, codeword_len, query, resp)) mark_reject(st);
  };
  for (Identity id : buyer_ids) challenge_round(players.at(id), player_rngs.at(id));
  challenge_round(players.at(Identity{Identity::kSeller}), seller_rng);

  // openings (step (e)): every non-rejected real player sends (v || r, s)
  std::map<Identity, crypto::Opening> received_openings;
  for (auto& [id, st] : players) {
    if (st.rejected) continue;
    const bool withholds = script.kind == AttackKind::WithholdOpening &&
                           script.corrupted_buyers.count(id) > 0;
    const bool is_fake = trace.strategic_identities.count(id) > 0 &&
                         std::find(buyer_ids.begin(), buyer_ids.end(), id) == buyer_ids.end() &&
                         !id.is_seller();
    if (withholds || (is_fake && script.kind == AttackKind::FakeBidInjection)) continue;
    received_openings[id] = st.opening;
    ByteWriter w;
    write_opening(w, st.opening);
    trace.record(config.t3, id.is_seller() ? PlayerRef::seller() : PlayerRef::player(id),
                 PlayerRef::the_platform(), "opening", w.take());
  }

  // --- step (f), T4: forced decryption of missing or invalid openings ----
  // A committed payload is usable only if it parses as id || v || r with the
  // roster identity, a domain tick (buyers) and a full-length coin.
  auto usable_payload = [&](Identity id, const std::optional<DecodedBidMessage>& decoded) {
    if (!decoded || !(decoded->id == id)) return false;
    if (decoded->coin.bit_count() != config.lambda_bits) return false;
    if (id.is_seller()) return !decoded->value.has_value();
    return decoded->value.has_value() && rules.domain().contains(*decoded->value);
  };

  bool fdec_failure = false;
  for (auto& entry : witness.entries) {
    const Identity id = entry.id;
    auto it = received_openings.find(id);
    std::optional<DecodedBidMessage> decoded;
    if (it != received_openings.end() &&
        nitc_decvf(config.nitc, entry.commitment, it->second.message, it->second)) {
      decoded = decode_bid_message(it->second.message);
      if (usable_payload(id, decoded)) {
        entry.forced = false;
        entry.opening = it->second;
        players.at(id).opened = true;
        entry.value = decoded->value;
        entry.coin = decoded->coin;
        continue;
      }
    }
    ForcedOpening forced = nitc_fdec(config.nitc, entry.commitment);
    trace.record(config.t4, PlayerRef::the_platform(), std::nullopt, "forced-decryption",
                 forced.message);
    decoded = decode_bid_message(forced.message);
    if (forced.tag_mismatch || !usable_payload(id, decoded)) {
      fdec_failure = true;
      break;
    }
    entry.forced = true;
    entry.forced_opening = forced;
    entry.value = decoded->value;
    entry.coin = decoded->coin;
  }

  if (fdec_failure) {
    // the bot post: every player reads it and rejects
    chain.post(PlayerRef::the_platform(), to_bytes("bot"));
    trace.record(config.t4, PlayerRef::the_platform(), std::nullopt, "post-bot", to_bytes("bot"));
    for (auto& [id, st] : players) mark_reject(st);
    trace.aborted = true;
    for (const auto& [id, st] : players)
      trace.decide(id.is_seller() ? PlayerRef::seller() : PlayerRef::player(id), false);
    trace.decide(PlayerRef::the_platform(), trace.platform_honest);
    trace.finalize_safety();
    return trace;
  }

  // --- step (g): run the rules under the joint coin ----------------------
  std::vector<CoinString> coins;
  for (const auto& e : witness.entries) coins.push_back(e.coin);
  coins.push_back(platform_coin);
  CoinString joint = xor_coin(coins);
  trace.joint_coin = joint;

  std::vector<Bid> roster_bids;
  for (const auto& e : witness.entries)
    if (!e.id.is_seller()) roster_bids.push_back({e.id, *e.value});
  AuctionOutcome outcome = rules.run(BidVector(roster_bids), joint);
  trace.outcome = outcome;

  for (auto& e : witness.entries)
    e.out = e.id.is_seller() ? seller_outcome(outcome) : buyer_outcome(outcome, e.id);
  if (script.kind == AttackKind::OutcomeMutation) {
    for (auto& e : witness.entries)
      if (e.id == script.target && !e.id.is_seller())
        e.out.payment += tick(rules.domain());
  }

  std::vector<Bytes> outcome_tuples;
  for (const auto& e : witness.entries) outcome_tuples.push_back(outcome_tuple_bytes(e));
  auto [digest_prime, aux_prime] = vc_digest(outcome_tuples);

  for (auto& [id, st] : players) {
    if (st.rejected) continue;
    st.seen_digest_prime = digest_prime;
    ByteWriter w;
    write_merkle_digest(w, digest_prime);
    trace.record(config.t4, PlayerRef::the_platform(),
                 id.is_seller() ? PlayerRef::seller() : PlayerRef::player(id), "digest-prime",
                 w.take());
  }

  // --- step (h): one argument-of-knowledge instance per verifier ---------
  RelationStatement statement{digest, digest_prime, roster_n, platform_coin};
  TransparentAok aok(config.nitc, rules);
  AokProof proof = aok.prove(statement, witness);
  for (auto& [id, st] : players) {
    if (st.rejected) continue;
    // fake identities have no verifier behind them
    if (trace.strategic_identities.count(id) > 0 && !id.is_seller() &&
        std::find(buyer_ids.begin(), buyer_ids.end(), id) == buyer_ids.end())
      continue;
    RelationStatement local{st.seen_digest.value_or(MerkleDigest{}),
                            st.seen_digest_prime.value_or(MerkleDigest{}),
                            st.seen_n.value_or(0), st.seen_platform_coin.value_or(joint)};
    st.aok_ok = aok.verify(local, proof);
    trace.record(config.t4, PlayerRef::the_platform(),
                 id.is_seller() ? PlayerRef::seller() : PlayerRef::player(id), "aok",
                 digest_bytes(sha256(proof.blob)));
    if (!st.aok_ok) mark_reject(st);
  }

  // --- step (i): private outcomes with membership proofs -----------------
  for (std::size_t idx = 0; idx < witness.entries.size(); ++idx) {
    const auto& e = witness.entries[idx];
    auto pit = players.find(e.id);
    if (pit == players.end()) continue;
    proto::PlayerState& st = pit->second;
    if (st.rejected || !st.opened) continue;  // forced players get nothing
    MerkleProof membership = vc_open(aux_prime, {idx});
    ByteWriter w;
    w.u64(idx);
    write_private_outcome(w, e.out);
    write_merkle_proof(w, membership);
    trace.record(config.t4, PlayerRef::the_platform(),
                 e.id.is_seller() ? PlayerRef::seller() : PlayerRef::player(e.id), "outcome",
                 w.take());
    // the player rebuilds its tuple and checks membership under digest'
    RelationEntry mine;
    mine.id = e.id;
    mine.commitment = st.commitment;
    mine.out = e.out;
    const bool ok =
        st.seen_digest_prime &&
        vc_vf(witness.entries.size(), *st.seen_digest_prime, {idx}, {outcome_tuple_bytes(mine)},
              membership);
    st.outcome_ok = ok;
    if (ok) {
      st.delivered = e.out;
      trace.delivered_outcomes[e.id] = e.out;
    } else {
      mark_reject(st);
    }
  }
  // real players in the roster that opened but got nothing time out; players
  // outside the roster (dropped tuple) also time out here
  for (auto& [id, st] : players) {
    if (st.rejected) continue;
    const bool is_fake = trace.strategic_identities.count(id) > 0 && !id.is_seller() &&
                         std::find(buyer_ids.begin(), buyer_ids.end(), id) == buyer_ids.end();
    if (is_fake) continue;
    if (st.opened && !st.outcome_ok) mark_reject(st);
    if (!st.opened &&
        std::find(roster.begin(), roster.end(), id) == roster.end())
      mark_reject(st);  // never served: no outcome will come
  }

  // --- step (j): blockchain post and final decisions ---------------------
  {
    ByteWriter w;
    write_statement(w, statement);
    chain.post(PlayerRef::the_platform(), w.bytes());
    trace.record(config.t4, PlayerRef::the_platform(), std::nullopt, "post-outcome", w.take());
  }
  for (auto& [id, st] : players) {
    const bool is_fake = trace.strategic_identities.count(id) > 0 && !id.is_seller() &&
                         std::find(buyer_ids.begin(), buyer_ids.end(), id) == buyer_ids.end();
    if (is_fake) continue;  // no real player behind the identity
    bool accept = !st.rejected && !st.suppressed;
    if (accept) {
      // compare the locally received values against the blockchain
      ByteReader r(chain.log.back().payload);
      RelationStatement posted = read_statement(r);
      accept = st.seen_digest && *st.seen_digest == posted.digest && st.seen_digest_prime &&
               *st.seen_digest_prime == posted.digest_prime && st.seen_n &&
               *st.seen_n == posted.n && st.seen_platform_coin &&
               *st.seen_platform_coin == posted.platform_coin && st.aok_ok && st.outcome_ok;
    }
    trace.decide(id.is_seller() ? PlayerRef::seller() : PlayerRef::player(id), accept);
  }
  trace.decide(PlayerRef::the_platform(), true);
  trace.finalize_safety();
  return trace;
}

// ---------------------------------------------------------------------------
// Honest-execution equivalence: couple each real run with an ideal run on
// the same joint randomness and compare outcomes bit for bit.

struct EquivalenceReport {
  std::size_t trials = 0;
  std::size_t mismatches = 0;
  bool all_safe = true;
};

inline EquivalenceReport honest_equivalence(const ProtocolConfig& config,
                                            const BidVector& honest_values, std::size_t trials) {
  EquivalenceReport report;
  ProtocolConfig cfg = config;
  for (std::size_t t = 0; t < trials; ++t) {
    cfg.seed = config.seed + t;
    ExecutionTrace trace = run_protocol(cfg, honest_values);
    report.all_safe = report.all_safe && trace.safe;
    IdealRunReport ideal =
        run_ideal_auction(*config.rules, honest_values, nullptr, *trace.joint_coin);
    ++report.trials;
    if (!(ideal.outcome == trace.outcome)) ++report.mismatches;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Real-protocol probe for incentive checks that have no ideal-world
// counterpart: outcome mutation is executed against the compiled protocol
// and scored through the trace, so detection (an unsafe trace) zeroes the
// coalition's utility. Wire it into IcCheckOptions::real_protocol_probe.

inline std::function<Rational(const StrategyScript&, const Coalition&, const BidVector&)>
make_outcome_mutation_probe(const ProtocolConfig& config, std::size_t runs = 20) {
  return [config, runs](const StrategyScript&, const Coalition& coalition,
                        const BidVector& honest_values) {
    if (honest_values.empty())
      throw InvalidScriptForCoalition("outcome mutation needs an honest victim");
    Rational total;
    ProtocolConfig cfg = config;
    for (std::size_t i = 0; i < runs; ++i) {
      cfg.seed = config.seed + i;
      ExecutionTrace trace = run_protocol(
          cfg, honest_values,
          AdversaryScript::outcome_mutation(honest_values.entries().front().id));
      total += coalition_utility(trace, coalition);
    }
    return total / Rational(static_cast<long>(runs));
  };
}

// ---------------------------------------------------------------------------
// The scripted attack suite with its expected trace property.

struct AttackExpectation {
  AdversaryScript script;
  bool expect_safe;
};

inline std::vector<AttackExpectation> attack_suite(const BidVector& honest_values,
                                                   const ValueDomain& domain) {
  if (honest_values.empty()) throw ConfigInvalid("attack_suite: need at least one honest buyer");
  const Identity some = honest_values.entries().front().id;
  std::uint64_t fresh = 1000;
  for (const auto& b : honest_values.entries()) fresh = std::max(fresh, b.id.value + 1000);
  const Rational top = domain.top();

  std::vector<AttackExpectation> suite;
  suite.push_back({AdversaryScript::withhold_opening(some), true});
  suite.push_back({AdversaryScript::garbage_commitment(some), true});
  suite.push_back({AdversaryScript::fake_bid_injection(some, {{Identity{fresh}, top}}), true});
  suite.push_back({AdversaryScript::seller_shill({{Identity{fresh + 1}, top}}), true});
  suite.push_back({AdversaryScript::duplicate_identity(some), true});
  suite.push_back({AdversaryScript::digest_equivocation(some), false});
  suite.push_back({AdversaryScript::outcome_mutation(some), false});
  suite.push_back({AdversaryScript::dropped_honest_tuple(some), false});
  return suite;
}

}  // namespace sealbid
