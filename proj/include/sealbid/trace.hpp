#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "sealbid/bytes.hpp"
#include "sealbid/hash.hpp"
#include "sealbid/mechanism.hpp"

namespace sealbid {

/// A protocol participant: the platform, or a player identity (the seller
/// is identity 0, buyers are the rest).
struct PlayerRef {
  bool platform = false;
  Identity id{};

  static PlayerRef the_platform() { return PlayerRef{true, {}}; }
  static PlayerRef player(Identity i) { return PlayerRef{false, i}; }
  static PlayerRef seller() { return player(Identity{Identity::kSeller}); }

  std::string label() const {
    return platform ? "platform" : std::to_string(id.value);
  }

  friend auto operator<=>(const PlayerRef&, const PlayerRef&) = default;
};

struct TraceMessage {
  std::size_t round = 0;
  PlayerRef from;
  std::optional<PlayerRef> to;  // nullopt = broadcast
  std::string step;             // protocol step label, e.g. "commit"
  Bytes payload;
};

/// Full record of one protocol execution: every message, every player's
/// accept/reject decision, the realized outcome, and the safety flag
/// (safe iff every honest player accepts).
struct ExecutionTrace {
  std::vector<TraceMessage> messages;
  std::map<PlayerRef, bool> decisions;
  std::set<Identity> strategic_identities;  // identities under coalition control
  bool platform_honest = true;
  AuctionOutcome outcome;
  std::map<Identity, PrivateOutcome> delivered_outcomes;  // as received at step (i)
  std::optional<CoinString> joint_coin;  // realized r, for real/ideal coupling
  bool aborted = false;  // platform posted bot / ideal functionality aborted
  bool safe = true;

  void record(std::size_t round, PlayerRef from, std::optional<PlayerRef> to, std::string step,
              Bytes payload) {
    messages.push_back({round, from, std::move(to), std::move(step), std::move(payload)});
  }

  void decide(PlayerRef who, bool accept) { decisions[who] = accept; }

  bool is_honest(Identity id) const { return strategic_identities.count(id) == 0; }

  /// Recomputes `safe` from the decisions of honest players (including the
  /// platform when honest; it always accepts by construction).
  void finalize_safety() {
    safe = true;
    for (const auto& [who, accepted] : decisions) {
      if (who.platform) continue;
      if (!is_honest(who.id)) continue;
      if (!accepted) safe = false;
    }
  }
};

/// Minimal trace for harness paths that never touch the network: just an
/// outcome plus the bookkeeping the utility formulas need.
inline ExecutionTrace outcome_trace(AuctionOutcome outcome, std::set<Identity> strategic,
                                    bool aborted = false) {
  ExecutionTrace t;
  t.outcome = std::move(outcome);
  t.strategic_identities = std::move(strategic);
  t.aborted = aborted;
  t.safe = !aborted;
  return t;
}

// ---------------------------------------------------------------------------
// JSON Lines export: one record per message, then a trailer.

inline nlohmann::json trace_message_to_json(const TraceMessage& m, bool full_payload) {
  nlohmann::json j;
  j["round"] = m.round;
  j["from"] = m.from.label();
  j["to"] = m.to ? nlohmann::json(m.to->label()) : nlohmann::json("broadcast");
  j["step"] = m.step;
  j["payload_digest"] = digest_hex(sha256(m.payload));
  if (full_payload) j["payload"] = to_hex(m.payload);
  return j;
}

inline std::string trace_to_jsonl(const ExecutionTrace& t, bool full_payload = false) {
  std::string out;
  for (const auto& m : t.messages) {
    out += trace_message_to_json(m, full_payload).dump();
    out += '\n';
  }
  nlohmann::json trailer;
  trailer["decisions"] = nlohmann::json::object();
  for (const auto& [who, accepted] : t.decisions) trailer["decisions"][who.label()] = accepted;
  trailer["outcome"] = outcome_to_json(t.outcome);
  trailer["safe"] = t.safe;
  out += trailer.dump();
  out += '\n';
  return out;
}

}  // namespace sealbid
