#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sealbid/coin.hpp"
#include "sealbid/domain.hpp"
#include "sealbid/errors.hpp"
#include "sealbid/rational.hpp"

namespace sealbid {

/// Opaque player label. Identity 0 is reserved for the seller.
struct Identity {
  std::uint64_t value = 0;

  static constexpr std::uint64_t kSeller = 0;
  bool is_seller() const { return value == kSeller; }

  friend auto operator<=>(const Identity&, const Identity&) = default;
};

struct Bid {
  Identity id;
  Rational amount;
};

/// Ordered list of (identity, bid) with distinct non-seller identities.
class BidVector {
 public:
  BidVector() = default;
  explicit BidVector(std::vector<Bid> entries) : entries_(std::move(entries)) {
    std::set<Identity> seen;
    for (const auto& b : entries_) {
      if (b.id.is_seller()) throw InvalidBid("bid vector: identity 0 is the seller");
      if (!seen.insert(b.id).second)
        throw DuplicateIdentity("bid vector: duplicate identity " + std::to_string(b.id.value));
    }
  }

  const std::vector<Bid>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::vector<Identity> identities() const {
    std::vector<Identity> ids;
    ids.reserve(entries_.size());
    for (const auto& b : entries_) ids.push_back(b.id);
    return ids;
  }

  std::optional<Rational> bid_of(Identity id) const {
    for (const auto& b : entries_)
      if (b.id == id) return b.amount;
    return std::nullopt;
  }

  BidVector with(Bid extra) const {
    std::vector<Bid> v = entries_;
    v.push_back(std::move(extra));
    return BidVector(std::move(v));
  }

  BidVector without(Identity id) const {
    std::vector<Bid> v;
    for (const auto& b : entries_)
      if (!(b.id == id)) v.push_back(b);
    return BidVector(std::move(v));
  }

  BidVector replaced(Identity id, const Rational& amount) const {
    std::vector<Bid> v = entries_;
    for (auto& b : v)
      if (b.id == id) b.amount = amount;
    return BidVector(std::move(v));
  }

 private:
  std::vector<Bid> entries_;
};

/// Private outcomes of one auction run: per-buyer (x_i, p_i), the seller's
/// (t, mu_S), and the platform's cut.
struct AuctionOutcome {
  std::map<Identity, int> allocations;       // x_i in {0, 1}
  std::map<Identity, Rational> payments;     // p_i >= 0, losers pay 0
  long items_sold = 0;                       // t
  Rational seller_revenue;                   // mu_S
  Rational platform_revenue;                 // sum p_i - mu_S

  int allocation_of(Identity id) const {
    auto it = allocations.find(id);
    return it == allocations.end() ? 0 : it->second;
  }
  Rational payment_of(Identity id) const {
    auto it = payments.find(id);
    return it == payments.end() ? Rational(0) : it->second;
  }
  Rational total_payment() const {
    Rational sum;
    for (const auto& [id, p] : payments) sum += p;
    return sum;
  }

  friend bool operator==(const AuctionOutcome& a, const AuctionOutcome& b) {
    return a.allocations == b.allocations && a.payments == b.payments &&
           a.items_sold == b.items_sold && a.seller_revenue == b.seller_revenue &&
           a.platform_revenue == b.platform_revenue;
  }
};

/// A single player's private outcome: (x_i, p_i) for buyers, (t, mu_S) for
/// the seller (identity 0).
struct PrivateOutcome {
  bool is_seller = false;
  int allocation = 0;
  Rational payment;
  long items_sold = 0;
  Rational seller_revenue;

  friend bool operator==(const PrivateOutcome&, const PrivateOutcome&) = default;
};

inline PrivateOutcome buyer_outcome(const AuctionOutcome& out, Identity id) {
  PrivateOutcome o;
  o.allocation = out.allocation_of(id);
  o.payment = out.payment_of(id);
  return o;
}

inline PrivateOutcome seller_outcome(const AuctionOutcome& out) {
  PrivateOutcome o;
  o.is_seller = true;
  o.items_sold = out.items_sold;
  o.seller_revenue = out.seller_revenue;
  return o;
}

/// Exact outcome distribution over the mechanism's internal randomness
/// (tie-breaking). Probabilities are exact rationals summing to 1.
struct WeightedOutcome {
  Rational probability;
  AuctionOutcome outcome;
};
using OutcomeDistribution = std::vector<WeightedOutcome>;

/// Per-buyer allocation probability and expected payment, both exact.
struct BuyerMarginal {
  Rational alloc_prob;
  Rational expected_payment;
};

inline BuyerMarginal marginal_of(const OutcomeDistribution& dist, Identity id) {
  BuyerMarginal m;
  for (const auto& w : dist) {
    if (w.outcome.allocation_of(id) > 0) m.alloc_prob += w.probability;
    m.expected_payment += w.probability * w.outcome.payment_of(id);
  }
  return m;
}

inline Rational expected_seller_revenue(const OutcomeDistribution& dist) {
  Rational r;
  for (const auto& w : dist) r += w.probability * w.outcome.seller_revenue;
  return r;
}

inline Rational expected_platform_revenue(const OutcomeDistribution& dist) {
  Rational r;
  for (const auto& w : dist) r += w.probability * w.outcome.platform_revenue;
  return r;
}

// ---------------------------------------------------------------------------
// Outcome well-formedness validators (consistency, budget, IR).

inline bool outcome_consistent(const AuctionOutcome& out) {
  long sum = 0;
  for (const auto& [id, x] : out.allocations) sum += x;
  return out.items_sold == sum;
}

inline bool outcome_budget_feasible(const AuctionOutcome& out) {
  return out.seller_revenue <= out.total_payment();
}

/// IR for truthful participants: x_i * v_i - p_i >= 0.
inline bool outcome_individually_rational(const AuctionOutcome& out, const BidVector& values) {
  for (const auto& b : values.entries()) {
    Rational util = Rational(out.allocation_of(b.id)) * b.amount - out.payment_of(b.id);
    if (util.is_negative()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Tie-breaking.
//
// All mechanism randomness reduces to a uniformly random priority order over
// identities. A run derives the order from its coin; the exact paths
// enumerate every way the relevant tied subset can be ranked, with rational
// weights, so expectations are exact.

inline std::vector<Identity> priority_from_coin(const std::vector<Identity>& ids,
                                                const CoinString& coin) {
  std::vector<Identity> order = ids;
  std::sort(order.begin(), order.end());
  Rng rng = coin.rng();
  rng.shuffle(order);
  return order;
}

inline std::map<Identity, std::size_t> priority_ranks(const std::vector<Identity>& order) {
  std::map<Identity, std::size_t> ranks;
  for (std::size_t i = 0; i < order.size(); ++i) ranks[order[i]] = i;
  return ranks;
}

namespace detail {

/// All size-k subsets of [0, n), in lexicographic order.
inline std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Second price with reserve and fixed (zero) platform fee.

namespace detail {

struct SecondPriceStage {
  std::vector<Bid> filtered;        // bids >= reserve, unordered
  std::vector<Identity> above;      // bids strictly above the threshold
  std::vector<Identity> tied;       // bids equal to the threshold (A of them)
  std::size_t confirmed_ties = 0;   // alpha
  Rational threshold;               // b_{k'+1}
  Rational price_above;             // payment of strictly-above winners
  std::size_t items = 0;            // k' = min(k, n)
};

inline SecondPriceStage second_price_stage(const ValueDomain& domain,
                                           const Rational& reserve_price, std::size_t k,
                                           const BidVector& bids) {
  if (k == 0) throw InvalidBid("second price: k must be positive");
  if (!domain.contains(reserve_price))
    throw InvalidBid("second price: reserve " + reserve_price.str() + " is not a tick");
  SecondPriceStage st;
  for (const auto& b : bids.entries()) {
    if (!domain.contains(b.amount))
      throw InvalidBid("second price: bid " + b.amount.str() + " is not a tick");
    if (!(b.amount < reserve_price)) st.filtered.push_back(b);
  }
  const std::size_t n = st.filtered.size();
  st.items = std::min(k, n);

  std::vector<Rational> amounts;
  amounts.reserve(n);
  for (const auto& b : st.filtered) amounts.push_back(b.amount);
  std::sort(amounts.begin(), amounts.end(), [](const auto& a, const auto& b) { return b < a; });

  st.threshold = n <= k ? reserve_price : amounts[st.items];
  for (const auto& b : st.filtered) {
    if (b.amount > st.threshold)
      st.above.push_back(b.id);
    else if (b.amount == st.threshold)
      st.tied.push_back(b.id);
  }
  st.confirmed_ties = st.items - st.above.size();

  // q = (alpha + 1) / (A + 1); strictly-above winners pay the q-mixture of
  // the threshold and its successor tick.
  const Rational q(static_cast<long>(st.confirmed_ties) + 1,
                   static_cast<long>(st.tied.size()) + 1);
  if (!st.above.empty()) {
    // A strictly greater confirmed bid forces threshold < top tick.
    st.price_above = st.threshold * q + next_tick(domain, st.threshold) * (Rational(1) - q);
  }
  return st;
}

inline AuctionOutcome second_price_outcome(const SecondPriceStage& st, const BidVector& bids,
                                           const std::vector<Identity>& tie_winners) {
  AuctionOutcome out;
  for (const auto& b : bids.entries()) {
    out.allocations[b.id] = 0;
    out.payments[b.id] = Rational(0);
  }
  for (Identity id : st.above) {
    out.allocations[id] = 1;
    out.payments[id] = st.price_above;
  }
  for (Identity id : tie_winners) {
    out.allocations[id] = 1;
    out.payments[id] = st.threshold;
  }
  out.items_sold = static_cast<long>(st.above.size() + tie_winners.size());
  out.seller_revenue = out.total_payment();
  out.platform_revenue = Rational(0);  // the platform gets nothing
  return out;
}

}  // namespace detail

/// One run of the second-price rule; the coin drives tie-breaking.
inline AuctionOutcome second_price_rules(const ValueDomain& domain, const Rational& reserve_price,
                                         std::size_t k, const BidVector& bids,
                                         const CoinString& coin) {
  auto st = detail::second_price_stage(domain, reserve_price, k, bids);
  std::vector<Identity> tied = st.tied;
  auto ranks = priority_ranks(priority_from_coin(bids.identities(), coin));
  std::sort(tied.begin(), tied.end(),
            [&](Identity a, Identity b) { return ranks[a] < ranks[b]; });
  tied.resize(st.confirmed_ties);
  return detail::second_price_outcome(st, bids, tied);
}

/// Exact outcome distribution of the second-price rule over uniform
/// tie-breaking: every way to confirm alpha of the A threshold bids,
/// each with probability 1/C(A, alpha).
inline OutcomeDistribution second_price_outcomes(const ValueDomain& domain,
                                                 const Rational& reserve_price, std::size_t k,
                                                 const BidVector& bids) {
  auto st = detail::second_price_stage(domain, reserve_price, k, bids);
  auto subsets = detail::k_subsets(st.tied.size(), st.confirmed_ties);
  OutcomeDistribution dist;
  dist.reserve(subsets.size());
  const Rational each(1, static_cast<long>(subsets.size()));
  for (const auto& subset : subsets) {
    std::vector<Identity> winners;
    winners.reserve(subset.size());
    for (std::size_t idx : subset) winners.push_back(st.tied[idx]);
    dist.push_back({each, detail::second_price_outcome(st, bids, winners)});
  }
  return dist;
}

// ---------------------------------------------------------------------------
// Optimal payment rule (discrete Myerson payment) and its virtual-surplus
// counterpart, used as the revenue oracle.

/// Allocation oracle: exact probability that buyer i wins when bidding a
/// given tick against a fixed environment.
using AllocationFn = std::function<Rational(const Rational& own_bid)>;

/// p*(theta^t) = theta^t x(theta^t) - sum_{j<=t} (theta^j - theta^{j-1}) x(theta^{j-1}),
/// walking the tick ladder from the bottom. Detects non-monotone oracles.
inline Rational optimal_payment(const ValueDomain& domain, const AllocationFn& alloc,
                                const Rational& own_bid) {
  auto idx = domain.index_of(own_bid);
  if (!idx) throw NotATick("optimal_payment: bid " + own_bid.str() + " is not a tick");
  Rational correction;
  Rational prev_x = alloc(domain.tick_at(0));
  for (std::size_t j = 1; j <= *idx; ++j) {
    Rational cur_x = alloc(domain.tick_at(j));
    if (cur_x < prev_x)
      throw NonMonotoneAllocation("optimal_payment: allocation decreases at " +
                                  domain.tick_at(j).str());
    correction += (domain.tick_at(j) - domain.tick_at(j - 1)) * prev_x;
    prev_x = cur_x;
  }
  return own_bid * prev_x - correction;
}

/// E_{b_i ~ D}[x_i(b_i) phi(b_i)] for a fixed environment; by the optimal
/// payment identity this equals E[p*_i(b_i)].
inline Rational expected_virtual_surplus(const DiscreteDistribution& dist,
                                         const AllocationFn& alloc) {
  Rational total;
  for (std::size_t i = 0; i < dist.domain().size(); ++i) {
    if (dist.pmf(i).is_zero()) continue;
    total += dist.pmf(i) * alloc(dist.domain().tick_at(i)) * virtual_value(dist, i);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Ascending auction with reserve and fixed (zero) platform fee.

struct AscendingRound {
  std::size_t tick_index;
  std::vector<Identity> said_ok;
  std::vector<Identity> dropped;
};

struct AscendingResult {
  std::optional<Rational> final_price;  // posted tick, or nullopt for the bot post
  AuctionOutcome outcome;
  std::vector<AscendingRound> rounds;
};

namespace detail {

struct AscendingStage {
  std::vector<AscendingRound> rounds;
  std::vector<Identity> standing;       // R at the stop round
  std::vector<Identity> last_dropped;   // droppers of the stop round
  std::size_t extra_winners = 0;        // chosen from last_dropped
  std::optional<std::size_t> stop_tick;
  bool stopped_at_open = false;         // tau == tau_0
};

inline AscendingStage ascending_stage(const ValueDomain& domain, std::size_t open_tick,
                                      std::size_t k, const BidVector& values) {
  if (k == 0) throw InvalidBid("ascending: k must be positive");
  for (const auto& b : values.entries())
    if (!domain.contains(b.amount))
      throw InvalidBid("ascending: value " + b.amount.str() + " is not a tick");

  AscendingStage st;
  std::vector<Identity> active;  // R: registered buyers with v >= theta_{tau_0}
  for (const auto& b : values.entries())
    if (!(b.amount < domain.tick_at(open_tick))) active.push_back(b.id);

  for (std::size_t tau = open_tick; tau < domain.size(); ++tau) {
    AscendingRound round{tau, {}, {}};
    std::vector<Identity> still;
    for (Identity id : active) {
      if (*values.bid_of(id) > domain.tick_at(tau)) {
        round.said_ok.push_back(id);
        still.push_back(id);
      } else {
        round.dropped.push_back(id);
      }
    }
    active = std::move(still);
    st.rounds.push_back(round);
    if (active.size() <= k) {
      st.standing = active;
      st.last_dropped = round.dropped;
      st.stop_tick = tau;
      st.stopped_at_open = tau == open_tick;
      // Dropper back-fill only after the opening round. A stop in a later
      // round implies |R| + |dropped| > k, so min() is a no-op there.
      if (!st.stopped_at_open)
        st.extra_winners = std::min(k - active.size(), round.dropped.size());
      return st;
    }
  }
  return st;  // |R| > k after the top tick: no sale
}

inline AuctionOutcome ascending_outcome(const AscendingStage& st, const ValueDomain& domain,
                                        const BidVector& values,
                                        const std::vector<Identity>& extra) {
  AuctionOutcome out;
  for (const auto& b : values.entries()) {
    out.allocations[b.id] = 0;
    out.payments[b.id] = Rational(0);
  }
  if (!st.stop_tick) {
    out.items_sold = 0;
    out.seller_revenue = Rational(0);
    out.platform_revenue = Rational(0);
    return out;
  }
  const Rational price = domain.tick_at(*st.stop_tick);
  for (Identity id : st.standing) {
    out.allocations[id] = 1;
    out.payments[id] = price;
  }
  for (Identity id : extra) {
    out.allocations[id] = 1;
    out.payments[id] = price;
  }
  out.items_sold = static_cast<long>(st.standing.size() + extra.size());
  out.seller_revenue = Rational(out.items_sold) * price;
  out.platform_revenue = Rational(0);
  return out;
}

}  // namespace detail

/// Simulates the ascending rounds. Buyers behave according to `values`
/// (a strategic buyer deviates by supplying a different threshold); the
/// opening round tau_0 is the reserve index of `dist`.
inline AscendingResult ascending_auction(const ValueDomain& domain,
                                         const DiscreteDistribution& dist, std::size_t k,
                                         const BidVector& values, const CoinString& coin) {
  auto st = detail::ascending_stage(domain, reserve_index(dist), k, values);
  std::vector<Identity> extra = st.last_dropped;
  auto ranks = priority_ranks(priority_from_coin(values.identities(), coin));
  std::sort(extra.begin(), extra.end(),
            [&](Identity a, Identity b) { return ranks[a] < ranks[b]; });
  extra.resize(st.extra_winners);

  AscendingResult res;
  res.rounds = st.rounds;
  res.outcome = detail::ascending_outcome(st, domain, values, extra);
  if (st.stop_tick) res.final_price = domain.tick_at(*st.stop_tick);
  return res;
}

/// Convenience overload with per-player strategy overrides: a strategic
/// buyer behaves as if its value were the override (its true value still
/// governs any utility accounting done by the caller).
inline AscendingResult ascending_auction(const ValueDomain& domain,
                                         const DiscreteDistribution& dist, std::size_t k,
                                         const BidVector& values,
                                         const std::map<Identity, Rational>& overrides,
                                         const CoinString& coin) {
  BidVector behavior = values;
  for (const auto& [id, v] : overrides) behavior = behavior.replaced(id, v);
  return ascending_auction(domain, dist, k, behavior, coin);
}

/// Exact outcome distribution of the ascending auction: the only randomness
/// is the uniform choice of back-filled winners among the final droppers.
inline OutcomeDistribution ascending_outcomes(const ValueDomain& domain,
                                              const DiscreteDistribution& dist, std::size_t k,
                                              const BidVector& values) {
  auto st = detail::ascending_stage(domain, reserve_index(dist), k, values);
  auto subsets = detail::k_subsets(st.last_dropped.size(), st.extra_winners);
  OutcomeDistribution out;
  out.reserve(subsets.size());
  const Rational each(1, static_cast<long>(subsets.size()));
  for (const auto& subset : subsets) {
    std::vector<Identity> extra;
    extra.reserve(subset.size());
    for (std::size_t idx : subset) extra.push_back(st.last_dropped[idx]);
    out.push_back({each, detail::ascending_outcome(st, domain, values, extra)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Auction rules: the (x, p, mu_S) triple the protocol compiler consumes.

class AuctionRules {
 public:
  virtual ~AuctionRules() = default;
  virtual std::string name() const = 0;
  virtual const ValueDomain& domain() const = 0;
  /// One run under the joint randomness r.
  virtual AuctionOutcome run(const BidVector& bids, const CoinString& r) const = 0;
  /// Exact outcome distribution over the rule's internal randomness.
  virtual OutcomeDistribution outcomes(const BidVector& bids) const = 0;
};

class SecondPriceRules final : public AuctionRules {
 public:
  SecondPriceRules(ValueDomain domain, Rational reserve_price, std::size_t k)
      : domain_(std::move(domain)), reserve_(std::move(reserve_price)), k_(k) {}

  std::string name() const override { return "second-price"; }
  const ValueDomain& domain() const override { return domain_; }
  const Rational& reserve_price() const { return reserve_; }
  std::size_t items() const { return k_; }

  AuctionOutcome run(const BidVector& bids, const CoinString& r) const override {
    return second_price_rules(domain_, reserve_, k_, bids, r);
  }
  OutcomeDistribution outcomes(const BidVector& bids) const override {
    return second_price_outcomes(domain_, reserve_, k_, bids);
  }

 private:
  ValueDomain domain_;
  Rational reserve_;
  std::size_t k_;
};

class AscendingRules final : public AuctionRules {
 public:
  AscendingRules(DiscreteDistribution dist, std::size_t k)
      : dist_(std::move(dist)), k_(k) {}

  std::string name() const override { return "ascending"; }
  const ValueDomain& domain() const override { return dist_.domain(); }
  const DiscreteDistribution& distribution() const { return dist_; }
  std::size_t items() const { return k_; }

  AuctionOutcome run(const BidVector& bids, const CoinString& r) const override {
    return ascending_auction(dist_.domain(), dist_, k_, bids, r).outcome;
  }
  OutcomeDistribution outcomes(const BidVector& bids) const override {
    return ascending_outcomes(dist_.domain(), dist_, k_, bids);
  }

 private:
  DiscreteDistribution dist_;
  std::size_t k_;
};

// ---------------------------------------------------------------------------
// Ideal auction: the trusted functionality's five steps around the rules.

/// Strategic side of the ideal auction: sees the honest bid count, may
/// inject bids, then approves or aborts after seeing the strategic outcomes.
class StrategicHook {
 public:
  virtual ~StrategicHook() = default;
  virtual std::vector<Bid> inject(std::size_t honest_bid_count) { (void)honest_bid_count; return {}; }
  virtual bool approve(const AuctionOutcome& outcome) { (void)outcome; return true; }
};

struct IdealRunReport {
  bool aborted = false;
  AuctionOutcome outcome;
  std::vector<Identity> strategic_identities;
  std::size_t honest_bid_count = 0;
};

/// Runs the trusted-functionality loop: collect honest bids, reveal the
/// count, accept strategic bids, compute outcomes under the coin, let the
/// hook approve or abort. An abort zeroes everyone's utility; the returned
/// outcome is kept for inspection only.
inline IdealRunReport run_ideal_auction(const AuctionRules& rules, const BidVector& honest_bids,
                                        StrategicHook* hook, const CoinString& coin) {
  IdealRunReport report;
  report.honest_bid_count = honest_bids.size();

  BidVector all = honest_bids;
  if (hook != nullptr) {
    for (const auto& fake : hook->inject(honest_bids.size())) {
      report.strategic_identities.push_back(fake.id);
      all = all.with(fake);  // throws DuplicateIdentity on a clash
    }
  }
  report.outcome = rules.run(all, coin);
  if (hook != nullptr && !hook->approve(report.outcome)) report.aborted = true;
  return report;
}

// ---------------------------------------------------------------------------
// JSON serialization of outcomes.

inline nlohmann::json outcome_to_json(const AuctionOutcome& out) {
  nlohmann::json j;
  j["allocations"] = nlohmann::json::object();
  j["payments"] = nlohmann::json::object();
  for (const auto& [id, x] : out.allocations) j["allocations"][std::to_string(id.value)] = x;
  for (const auto& [id, p] : out.payments) j["payments"][std::to_string(id.value)] = p.str();
  j["t"] = out.items_sold;
  j["seller_revenue"] = out.seller_revenue.str();
  j["platform_revenue"] = out.platform_revenue.str();
  return j;
}

inline AuctionOutcome outcome_from_json(const nlohmann::json& j) {
  AuctionOutcome out;
  for (auto it = j.at("allocations").begin(); it != j.at("allocations").end(); ++it)
    out.allocations[Identity{std::stoull(it.key())}] = it.value().get<int>();
  for (auto it = j.at("payments").begin(); it != j.at("payments").end(); ++it)
    out.payments[Identity{std::stoull(it.key())}] = Rational::parse(it.value().get<std::string>());
  out.items_sold = j.at("t").get<long>();
  out.seller_revenue = Rational::parse(j.at("seller_revenue").get<std::string>());
  out.platform_revenue = Rational::parse(j.at("platform_revenue").get<std::string>());
  return out;
}

}  // namespace sealbid
