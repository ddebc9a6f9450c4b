#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sealbid/domain.hpp"
#include "sealbid/mechanism.hpp"
#include "sealbid/trace.hpp"

namespace sealbid {

// ---------------------------------------------------------------------------
// Coalitions and their utilities.

/// A strategic party. The supported shapes are: a single buyer, the seller,
/// the platform, platform+seller, and platform plus a set of buyers.
struct Coalition {
  bool includes_platform = false;
  bool includes_seller = false;
  std::set<Identity> buyer_members;
  std::map<Identity, Rational> true_values;

  static Coalition single_buyer(Identity id, Rational value) {
    Coalition c;
    c.buyer_members = {id};
    c.true_values[id] = std::move(value);
    return c;
  }
  static Coalition seller_only() {
    Coalition c;
    c.includes_seller = true;
    return c;
  }
  static Coalition platform_only() {
    Coalition c;
    c.includes_platform = true;
    return c;
  }
  static Coalition platform_seller() {
    Coalition c;
    c.includes_platform = true;
    c.includes_seller = true;
    return c;
  }
  static Coalition platform_with_buyers(std::map<Identity, Rational> values) {
    Coalition c;
    c.includes_platform = true;
    for (const auto& [id, v] : values) c.buyer_members.insert(id);
    c.true_values = std::move(values);
    return c;
  }

  void validate() const {
    for (const auto& id : buyer_members)
      if (id.is_seller()) throw InvalidScriptForCoalition("coalition: identity 0 is the seller");
    if (!includes_platform) {
      if (includes_seller && !buyer_members.empty())
        throw InvalidScriptForCoalition("coalition: seller+buyer coalitions are not modeled");
      if (!includes_seller && buyer_members.size() > 1)
        throw InvalidScriptForCoalition("coalition: multi-buyer coalitions need the platform");
    }
  }
};

/// Exact coalition utility of one execution trace.
///
/// Unsafe (or aborted) traces are worth exactly 0. On safe traces:
///  - single buyer: v * [won >= 1] - total payments over its identities
///  - seller alone: mu_S minus what its shill identities paid
///  - platform alone: sum of honest buyers' payments - mu_S
///  - platform+seller: sum of honest buyers' payments
///  - platform+buyers B: sum_H p_i - mu_S + top-min(x*, |B|) member values,
///    where x* = t - sum_H x_i is the number of items the coalition holds.
inline Rational coalition_utility(const ExecutionTrace& trace, const Coalition& coalition) {
  coalition.validate();
  if (!trace.safe || trace.aborted) return Rational(0);
  const AuctionOutcome& out = trace.outcome;

  // Identities the coalition controls: its buyer members plus anything it
  // injected during the run.
  std::set<Identity> controlled = coalition.buyer_members;
  for (const auto& id : trace.strategic_identities) controlled.insert(id);

  auto honest_payment_sum = [&] {
    Rational sum;
    for (const auto& [id, p] : out.payments)
      if (!controlled.count(id)) sum += p;
    return sum;
  };

  if (coalition.includes_platform) {
    if (coalition.includes_seller) return honest_payment_sum();
    long honest_items = 0;
    for (const auto& [id, x] : out.allocations)
      if (!controlled.count(id)) honest_items += x;
    long held = out.items_sold - honest_items;
    if (held < 0) held = 0;
    std::vector<Rational> member_values;
    for (const auto& [id, v] : coalition.true_values) member_values.push_back(v);
    std::sort(member_values.begin(), member_values.end(),
              [](const auto& a, const auto& b) { return b < a; });
    Rational util = honest_payment_sum() - out.seller_revenue;
    const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(held),
                                                   member_values.size());
    for (std::size_t i = 0; i < take; ++i) util += member_values[i];
    return util;
  }

  if (coalition.includes_seller) {
    Rational util = out.seller_revenue;
    for (const auto& id : trace.strategic_identities) util -= out.payment_of(id);
    return util;
  }

  // Single buyer (unit demand): one item's worth of value, all payments owed.
  Rational util;
  for (const auto& [id, v] : coalition.true_values) {
    long items = 0;
    Rational paid;
    for (const auto& cid : controlled) {
      items += out.allocation_of(cid);
      paid += out.payment_of(cid);
    }
    if (items > 0) util += v;
    util -= paid;
  }
  return util;
}

// ---------------------------------------------------------------------------
// Strategy scripts.

enum class ScriptKind {
  InputReplace,
  InjectFakeBids,
  DropOut,
  AbortAfterOutcome,
  PlatformOutcomeMutation,
  PlatformSimulateWorld,
  SellerShillBids,
  Custom,
};

/// One scripted deviation. A script only controls coalition members'
/// messages; validation rejects scripts that need powers the coalition
/// does not have.
struct StrategyScript {
  ScriptKind kind = ScriptKind::InputReplace;
  std::string label;
  std::map<Identity, Rational> replacements;  // member id -> replacement bid
  std::set<Identity> dropouts;                // member ids that stay silent
  std::vector<Bid> fake_bids;                 // injected under fresh identities
  bool abort_always = false;
  bool abort_if_losing = false;  // abort outcomes with utility < 0
  /// Custom hook: extra bids as a function of the honest bid count.
  std::function<std::vector<Bid>(std::size_t)> custom_inject;

  static StrategyScript input_replace(Identity who, Rational bid) {
    StrategyScript s;
    s.kind = ScriptKind::InputReplace;
    s.label = "replace:" + std::to_string(who.value) + "->" + bid.str();
    s.replacements[who] = std::move(bid);
    return s;
  }
  static StrategyScript inject(std::vector<Bid> fakes, ScriptKind kind = ScriptKind::InjectFakeBids) {
    StrategyScript s;
    s.kind = kind;
    std::string what = kind == ScriptKind::SellerShillBids ? "shill" : "inject";
    for (const auto& b : fakes) what += ":" + b.amount.str();
    s.label = what;
    s.fake_bids = std::move(fakes);
    return s;
  }
  static StrategyScript drop_out(Identity who) {
    StrategyScript s;
    s.kind = ScriptKind::DropOut;
    s.label = "dropout:" + std::to_string(who.value);
    s.dropouts.insert(who);
    return s;
  }
  static StrategyScript abort_after_outcome() {
    StrategyScript s;
    s.kind = ScriptKind::AbortAfterOutcome;
    s.label = "abort";
    s.abort_always = true;
    return s;
  }
  static StrategyScript simulate_world(std::vector<Bid> fakes) {
    StrategyScript s;
    s.kind = ScriptKind::PlatformSimulateWorld;
    s.label = "simulate-world";
    for (const auto& b : fakes) s.label += ":" + b.amount.str();
    s.fake_bids = std::move(fakes);
    s.abort_if_losing = true;
    return s;
  }

  void validate(const Coalition& coalition) const {
    switch (kind) {
      case ScriptKind::InputReplace:
      case ScriptKind::DropOut:
        for (const auto& [id, v] : replacements)
          if (!coalition.buyer_members.count(id))
            throw InvalidScriptForCoalition("script replaces a non-member bid");
        for (const auto& id : dropouts)
          if (!coalition.buyer_members.count(id))
            throw InvalidScriptForCoalition("script drops a non-member bid");
        break;
      case ScriptKind::InjectFakeBids:
      case ScriptKind::Custom:
        break;
      case ScriptKind::SellerShillBids:
        if (!coalition.includes_seller && !coalition.includes_platform)
          throw InvalidScriptForCoalition("shill bids need the seller or platform");
        break;
      case ScriptKind::AbortAfterOutcome:
      case ScriptKind::PlatformSimulateWorld:
      case ScriptKind::PlatformOutcomeMutation:
        if (!coalition.includes_platform)
          throw InvalidScriptForCoalition("script needs the platform in the coalition");
        break;
    }
  }
};

// ---------------------------------------------------------------------------
// The IC falsification harness.
//
// This is a falsifier, not a prover: it sweeps a finite script suite and
// reports "no violation found" when every deviation does no better than
// honesty. Exact mode compares exact rationals with expectations taken over
// the full tie-break space (and the full profile space in Bayesian mode).

struct UtilityReport {
  std::string script_label;
  Rational honest_expected;
  Rational deviating_expected;
  bool exact = true;
  std::size_t samples = 0;     // Monte Carlo only
  double half_width = 0.0;     // 99% confidence, Monte Carlo only
  bool violated = false;
};

struct IcCheckOptions {
  bool bayesian = false;
  const DiscreteDistribution* prior = nullptr;  // required when bayesian
  bool monte_carlo = false;
  std::size_t mc_samples = 20000;
  std::uint64_t seed = 1;
  std::size_t enumeration_bound = 1000000;
  /// Evaluates real-protocol-only scripts (outcome mutation); supplied by
  /// the protocol layer. Returns the deviating expected utility.
  std::function<Rational(const StrategyScript&, const Coalition&, const BidVector&)>
      real_protocol_probe;
};

namespace detail {

/// Expected coalition utility of one behavior against fixed honest bids,
/// exact over the mechanism's tie-break distribution.
inline Rational expected_utility_fixed(const AuctionRules& rules, const Coalition& coalition,
                                       const BidVector& all_bids,
                                       const std::set<Identity>& injected,
                                       bool abort_always, bool abort_if_losing) {
  if (abort_always) return Rational(0);
  Rational total;
  for (const auto& w : rules.outcomes(all_bids)) {
    ExecutionTrace t = outcome_trace(w.outcome, injected);
    Rational u = coalition_utility(t, coalition);
    if (abort_if_losing && u.is_negative()) continue;  // abort: contributes 0
    total += w.probability * u;
  }
  return total;
}

/// Assembles the submitted bid vector for a coalition behavior.
inline BidVector apply_script(const BidVector& honest_others, const Coalition& coalition,
                              const StrategyScript* script, std::set<Identity>* injected_out) {
  BidVector bids = honest_others;
  for (const auto& [id, v] : coalition.true_values) {
    if (script != nullptr && script->dropouts.count(id)) continue;
    Rational amount = v;
    if (script != nullptr) {
      auto it = script->replacements.find(id);
      if (it != script->replacements.end()) amount = it->second;
    }
    bids = bids.with({id, amount});
  }
  if (script != nullptr) {
    std::vector<Bid> fakes = script->fake_bids;
    if (script->custom_inject)
      for (const auto& extra : script->custom_inject(honest_others.size()))
        fakes.push_back(extra);
    for (const auto& fake : fakes) {
      bids = bids.with(fake);
      injected_out->insert(fake.id);
    }
  }
  return bids;
}

/// Enumerates value profiles over D^n with exact weights.
template <typename Fn>
void for_each_profile(const DiscreteDistribution& dist, std::size_t n, Fn&& fn) {
  std::vector<std::size_t> idx(n, 0);
  const std::size_t t = dist.domain().size();
  while (true) {
    Rational weight(1);
    std::vector<Rational> values;
    values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      weight *= dist.pmf(idx[i]);
      values.push_back(dist.domain().tick_at(idx[i]));
    }
    if (!weight.is_zero()) fn(values, weight);
    std::size_t pos = 0;
    while (pos < n && ++idx[pos] == t) idx[pos++] = 0;
    if (pos == n) break;
  }
}

inline std::size_t profile_count(std::size_t ticks, std::size_t n) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (count > 100000000 / std::max<std::size_t>(ticks, 1)) return SIZE_MAX;
    count *= ticks;
  }
  return count;
}

inline std::size_t sample_tick_index(const DiscreteDistribution& dist, Rng& rng) {
  // Exact inverse-CDF sampling on a 2^-64 grid is fine here: Monte Carlo
  // mode is statistical by definition.
  const double u = static_cast<double>(rng.next_u64()) / 18446744073709551616.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < dist.domain().size(); ++i) {
    acc += dist.pmf(i).approx();
    if (u < acc) return i;
  }
  return dist.domain().size() - 1;
}

}  // namespace detail

/// Evaluates one script: honest vs deviating expected coalition utility.
inline UtilityReport evaluate_script(const AuctionRules& rules, const Coalition& coalition,
                                     const StrategyScript& script, const BidVector& honest_values,
                                     const IcCheckOptions& opts = {}) {
  coalition.validate();
  script.validate(coalition);

  UtilityReport report;
  report.script_label = script.label;

  if (script.kind == ScriptKind::PlatformOutcomeMutation) {
    if (!opts.real_protocol_probe)
      throw InvalidScriptForCoalition(
          "outcome mutation runs against the real protocol; no probe configured");
    std::set<Identity> none;
    report.honest_expected = detail::expected_utility_fixed(
        rules, coalition, detail::apply_script(honest_values, coalition, nullptr, &none), {},
        false, false);
    report.deviating_expected = opts.real_protocol_probe(script, coalition, honest_values);
    report.violated = report.deviating_expected > report.honest_expected;
    return report;
  }

  auto evaluate_pair = [&](const BidVector& honest_others) {
    std::set<Identity> injected;
    BidVector honest_bids = detail::apply_script(honest_others, coalition, nullptr, &injected);
    Rational honest_u = detail::expected_utility_fixed(rules, coalition, honest_bids, {},
                                                       false, false);
    injected.clear();
    BidVector dev_bids = detail::apply_script(honest_others, coalition, &script, &injected);
    Rational dev_u = detail::expected_utility_fixed(rules, coalition, dev_bids, injected,
                                                    script.abort_always, script.abort_if_losing);
    return std::make_pair(honest_u, dev_u);
  };

  if (!opts.bayesian) {
    auto [h, d] = evaluate_pair(honest_values);
    report.honest_expected = h;
    report.deviating_expected = d;
    report.violated = report.deviating_expected > report.honest_expected;
    return report;
  }

  if (opts.prior == nullptr) throw ConfigInvalid("bayesian IC check needs a prior");
  const DiscreteDistribution& prior = *opts.prior;
  const std::vector<Identity> honest_ids = honest_values.identities();
  const std::size_t n_h = honest_ids.size();

  const std::size_t profiles = detail::profile_count(prior.domain().size(), n_h);
  if (!opts.monte_carlo || n_h == 0) {
    if (profiles > opts.enumeration_bound)
      throw EnumerationTooLarge("bayesian IC check: profile space exceeds bound");
    Rational honest_total, dev_total;
    detail::for_each_profile(prior, n_h, [&](const std::vector<Rational>& values,
                                             const Rational& weight) {
      std::vector<Bid> bids;
      for (std::size_t i = 0; i < n_h; ++i) bids.push_back({honest_ids[i], values[i]});
      auto [h, d] = evaluate_pair(BidVector(bids));
      honest_total += weight * h;
      dev_total += weight * d;
    });
    report.honest_expected = honest_total;
    report.deviating_expected = dev_total;
    report.violated = report.deviating_expected > report.honest_expected;
    return report;
  }

  // Stratified Monte Carlo on the first honest buyer's tick; normal
  // approximation half-width at 99% confidence.
  Rng rng(opts.seed);
  report.exact = false;
  Rational honest_total, dev_total;
  double variance_term = 0.0;
  std::size_t total_samples = 0;
  for (std::size_t stratum = 0; stratum < prior.domain().size(); ++stratum) {
    const Rational& weight = prior.pmf(stratum);
    if (weight.is_zero()) continue;
    std::size_t n_s = n_h == 0 ? opts.mc_samples
                               : std::max<std::size_t>(
                                     1, static_cast<std::size_t>(
                                            weight.approx() * static_cast<double>(opts.mc_samples)));
    Rational h_sum, d_sum;
    double diff_sum = 0.0, diff_sq_sum = 0.0;
    for (std::size_t s = 0; s < n_s; ++s) {
      std::vector<Bid> bids;
      for (std::size_t i = 0; i < n_h; ++i) {
        std::size_t t = i == 0 ? stratum : detail::sample_tick_index(prior, rng);
        bids.push_back({honest_ids[i], prior.domain().tick_at(t)});
      }
      auto [h, d] = evaluate_pair(BidVector(bids));
      h_sum += h;
      d_sum += d;
      const double diff = (d - h).approx();
      diff_sum += diff;
      diff_sq_sum += diff * diff;
    }
    const double n = static_cast<double>(n_s);
    const double mean = diff_sum / n;
    const double var = n > 1 ? (diff_sq_sum - n * mean * mean) / (n - 1) : 0.0;
    const double w = weight.approx();
    honest_total += weight * h_sum / Rational(static_cast<long>(n_s));
    dev_total += weight * d_sum / Rational(static_cast<long>(n_s));
    variance_term += w * w * var / n;
    total_samples += n_s;
    if (n_h == 0) break;  // no honest buyers: nothing to stratify over
  }
  report.honest_expected = honest_total;
  report.deviating_expected = dev_total;
  report.samples = total_samples;
  report.half_width = 2.5758 * std::sqrt(variance_term);
  report.violated =
      (report.deviating_expected - report.honest_expected).approx() > report.half_width;
  return report;
}

/// Runs a script suite; one report per script.
inline std::vector<UtilityReport> check_ic(const AuctionRules& rules, const Coalition& coalition,
                                           const std::vector<StrategyScript>& scripts,
                                           const BidVector& honest_values,
                                           const IcCheckOptions& opts = {}) {
  std::vector<UtilityReport> reports;
  reports.reserve(scripts.size());
  for (const auto& script : scripts)
    reports.push_back(evaluate_script(rules, coalition, script, honest_values, opts));
  return reports;
}

// ---------------------------------------------------------------------------
// Standard script suites.

/// Deviations available to a single buyer: every input replacement, every
/// single fake-bid injection, and dropping out.
inline std::vector<StrategyScript> buyer_script_suite(const ValueDomain& domain, Identity buyer,
                                                      std::uint64_t fresh_id,
                                                      bool compose_replace_and_fake = false) {
  std::vector<StrategyScript> suite;
  for (const auto& t : domain.ticks()) suite.push_back(StrategyScript::input_replace(buyer, t));
  for (const auto& t : domain.ticks())
    suite.push_back(StrategyScript::inject({{Identity{fresh_id}, t}}));
  if (compose_replace_and_fake) {
    for (const auto& r : domain.ticks())
      for (const auto& f : domain.ticks()) {
        StrategyScript s = StrategyScript::input_replace(buyer, r);
        s.fake_bids.push_back({Identity{fresh_id}, f});
        s.label += "+inject:" + f.str();
        suite.push_back(s);
      }
  }
  suite.push_back(StrategyScript::drop_out(buyer));
  return suite;
}

/// Deviations for platform-side coalitions: fake-bid injection over the
/// domain, unconditional abort, and the probe-then-abort strategy.
inline std::vector<StrategyScript> platform_script_suite(const ValueDomain& domain,
                                                         std::uint64_t fresh_id) {
  std::vector<StrategyScript> suite;
  for (const auto& t : domain.ticks())
    suite.push_back(StrategyScript::inject({{Identity{fresh_id}, t}}));
  suite.push_back(StrategyScript::abort_after_outcome());
  for (const auto& t : domain.ticks())
    suite.push_back(StrategyScript::simulate_world({{Identity{fresh_id}, t}}));
  return suite;
}

inline std::vector<StrategyScript> seller_script_suite(const ValueDomain& domain,
                                                       std::uint64_t fresh_id) {
  std::vector<StrategyScript> suite;
  for (const auto& t : domain.ticks())
    suite.push_back(
        StrategyScript::inject({{Identity{fresh_id}, t}}, ScriptKind::SellerShillBids));
  return suite;
}

// ---------------------------------------------------------------------------
// Myerson checks: monotone allocation and the payment sandwich, exact.

struct MyersonReport {
  bool ok = true;
  std::size_t tuples_checked = 0;
  std::string first_violation;
};

namespace detail {

inline bool myerson_pair_check(const Rational& b, const Rational& b_hi, const BuyerMarginal& lo,
                               const BuyerMarginal& hi, std::string* why) {
  const Rational dx = hi.alloc_prob - lo.alloc_prob;
  const Rational dp = hi.expected_payment - lo.expected_payment;
  if (dx.is_negative()) {
    *why = "allocation decreases from " + b.str() + " to " + b_hi.str();
    return false;
  }
  if (b * dx > dp || dp > b_hi * dx) {
    *why = "payment sandwich fails for " + b.str() + " < " + b_hi.str() + ": " +
           (b * dx).str() + " <= " + dp.str() + " <= " + (b_hi * dx).str();
    return false;
  }
  return true;
}

}  // namespace detail

/// Exhaustive ex-post Myerson check: every buyer, every opposing profile,
/// every bid pair. Expectations over tie-breaks are exact.
inline MyersonReport myerson_check(const AuctionRules& rules, std::size_t n,
                                   std::size_t enumeration_bound = 1000000) {
  const ValueDomain& dom = rules.domain();
  MyersonReport report;
  if (n == 0) return report;
  const std::size_t others = n - 1;
  if (detail::profile_count(dom.size(), others) > enumeration_bound)
    throw EnumerationTooLarge("myerson_check: profile space exceeds bound");

  std::vector<Identity> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(Identity{i + 1});

  std::vector<std::size_t> idx(others, 0);
  while (true) {
    for (std::size_t buyer = 0; buyer < n && report.ok; ++buyer) {
      // Marginal curve of `buyer` against this opposing profile.
      std::vector<BuyerMarginal> curve;
      curve.reserve(dom.size());
      for (const auto& own : dom.ticks()) {
        std::vector<Bid> bids;
        std::size_t slot = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (i == buyer)
            bids.push_back({ids[i], own});
          else
            bids.push_back({ids[i], dom.tick_at(idx[slot++])});
        }
        curve.push_back(marginal_of(rules.outcomes(BidVector(bids)), ids[buyer]));
      }
      for (std::size_t lo = 0; lo < dom.size() && report.ok; ++lo)
        for (std::size_t hi = lo + 1; hi < dom.size() && report.ok; ++hi) {
          ++report.tuples_checked;
          std::string why;
          if (!detail::myerson_pair_check(dom.tick_at(lo), dom.tick_at(hi), curve[lo], curve[hi],
                                          &why)) {
            report.ok = false;
            report.first_violation = "buyer " + std::to_string(ids[buyer].value) + ": " + why;
          }
        }
    }
    if (!report.ok) return report;
    std::size_t pos = 0;
    while (pos < others && ++idx[pos] == dom.size()) idx[pos++] = 0;
    if (pos == others || others == 0) break;
  }
  return report;
}

/// Bayesian Myerson check: the same inequalities on expectation curves
/// averaged over opposing profiles drawn from the prior, exact.
inline MyersonReport myerson_check_bayesian(const AuctionRules& rules,
                                            const DiscreteDistribution& prior, std::size_t n,
                                            std::size_t enumeration_bound = 1000000) {
  const ValueDomain& dom = rules.domain();
  MyersonReport report;
  if (n == 0) return report;
  const std::size_t others = n - 1;
  if (detail::profile_count(dom.size(), others) > enumeration_bound)
    throw EnumerationTooLarge("myerson_check_bayesian: profile space exceeds bound");

  std::vector<Identity> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(Identity{i + 1});
  const Identity me = ids[0];

  std::vector<BuyerMarginal> curve(dom.size());
  detail::for_each_profile(prior, others, [&](const std::vector<Rational>& values,
                                              const Rational& weight) {
    for (std::size_t own = 0; own < dom.size(); ++own) {
      std::vector<Bid> bids;
      bids.push_back({me, dom.tick_at(own)});
      for (std::size_t i = 0; i < others; ++i) bids.push_back({ids[i + 1], values[i]});
      BuyerMarginal m = marginal_of(rules.outcomes(BidVector(bids)), me);
      curve[own].alloc_prob += weight * m.alloc_prob;
      curve[own].expected_payment += weight * m.expected_payment;
    }
  });

  for (std::size_t lo = 0; lo < dom.size() && report.ok; ++lo)
    for (std::size_t hi = lo + 1; hi < dom.size() && report.ok; ++hi) {
      ++report.tuples_checked;
      std::string why;
      if (!detail::myerson_pair_check(dom.tick_at(lo), dom.tick_at(hi), curve[lo], curve[hi],
                                      &why)) {
        report.ok = false;
        report.first_violation = "bayesian: " + why;
      }
    }
  return report;
}

// ---------------------------------------------------------------------------
// Revenue checks.

struct PlatformRevenueReport {
  Rational expected_revenue;   // exact over D^n and tie-breaks
  double bound = 0.0;          // tick * k * (ln n + 3)
  bool is_zero = false;
  bool within_bound = false;
};

/// Expected platform revenue under honest play, exact over D^n, checked
/// against the almost-zero-revenue bound.
inline PlatformRevenueReport platform_revenue_bound(const AuctionRules& rules,
                                                    const DiscreteDistribution& dist,
                                                    std::size_t n, std::size_t k,
                                                    std::size_t enumeration_bound = 1000000) {
  if (detail::profile_count(dist.domain().size(), n) > enumeration_bound)
    throw EnumerationTooLarge("platform_revenue_bound: profile space exceeds bound");
  PlatformRevenueReport report;
  detail::for_each_profile(dist, n, [&](const std::vector<Rational>& values,
                                        const Rational& weight) {
    std::vector<Bid> bids;
    for (std::size_t i = 0; i < values.size(); ++i) bids.push_back({Identity{i + 1}, values[i]});
    report.expected_revenue +=
        weight * expected_platform_revenue(rules.outcomes(BidVector(bids)));
  });
  report.bound = tick(rules.domain()).approx() * static_cast<double>(k) *
                 (std::log(static_cast<double>(n)) + 3.0);
  report.is_zero = report.expected_revenue.is_zero();
  report.within_bound = report.expected_revenue.approx() <= report.bound + 1e-12;
  return report;
}

struct RevenueRow {
  std::vector<Rational> values;
  Rational weight;
  Rational ascending_revenue;
  Rational second_price_revenue;
  Rational optimal_virtual_surplus;
};

struct RevenueComparison {
  std::vector<RevenueRow> rows;
  Rational expected_ascending;
  Rational expected_second_price;
  Rational expected_optimal;
  Rational max_gap;              // max per-profile |ascending - second price|
  Rational gap_bound;            // k * tick
  bool second_price_is_optimal = false;
  bool ascending_within_bound = false;
};

/// Per-profile and expected revenues of the two mechanisms against the
/// brute-force optimal virtual-surplus oracle.
inline RevenueComparison revenue_compare(const DiscreteDistribution& dist, std::size_t k,
                                         std::size_t n,
                                         std::size_t enumeration_bound = 1000000) {
  if (detail::profile_count(dist.domain().size(), n) > enumeration_bound)
    throw EnumerationTooLarge("revenue_compare: profile space exceeds bound");
  const ValueDomain& dom = dist.domain();
  SecondPriceRules second_price(dom, reserve(dist), k);
  AscendingRules ascending(dist, k);

  RevenueComparison cmp;
  cmp.gap_bound = Rational(static_cast<long>(k)) * tick(dom);

  detail::for_each_profile(dist, n, [&](const std::vector<Rational>& values,
                                        const Rational& weight) {
    std::vector<Bid> bids;
    for (std::size_t i = 0; i < values.size(); ++i) bids.push_back({Identity{i + 1}, values[i]});
    BidVector profile(bids);

    RevenueRow row;
    row.values = values;
    row.weight = weight;
    row.second_price_revenue = expected_seller_revenue(second_price.outcomes(profile));
    row.ascending_revenue = expected_seller_revenue(ascending.outcomes(profile));

    // Optimal oracle: allocate to the k highest non-negative virtual values.
    std::vector<Rational> virtuals;
    for (const auto& v : values) virtuals.push_back(virtual_value(dist, *dom.index_of(v)));
    std::sort(virtuals.begin(), virtuals.end(), [](const auto& a, const auto& b) { return b < a; });
    for (std::size_t i = 0; i < std::min(k, virtuals.size()); ++i)
      if (!virtuals[i].is_negative()) row.optimal_virtual_surplus += virtuals[i];

    cmp.expected_ascending += weight * row.ascending_revenue;
    cmp.expected_second_price += weight * row.second_price_revenue;
    cmp.expected_optimal += weight * row.optimal_virtual_surplus;
    cmp.max_gap = max(cmp.max_gap, abs(row.ascending_revenue - row.second_price_revenue));
    cmp.rows.push_back(std::move(row));
  });

  cmp.second_price_is_optimal = cmp.expected_second_price == cmp.expected_optimal;
  cmp.ascending_within_bound = cmp.max_gap <= cmp.gap_bound;
  return cmp;
}

// ---------------------------------------------------------------------------
// Revenue-tick lemma check.

using CurveFn = std::function<Rational(const Rational&)>;

struct TickLemmaReport {
  std::size_t pairs_checked = 0;
  bool conclusion_holds = true;
  std::string witness;
};

/// Verifies the hypotheses (monotone x, payment sandwich, and the revenue
/// increment bound) over every tick pair, then the conclusion
/// mu(b') - mu(b) <= tick * |x(b') - x(b)|. A hypothesis violation throws
/// HypothesisViolated with the witness pair.
inline TickLemmaReport revenue_tick_lemma_check(const CurveFn& x, const CurveFn& p,
                                                const CurveFn& mu, const ValueDomain& domain) {
  const Rational step = tick(domain);
  TickLemmaReport report;
  // Pass 1: hypotheses over every ordered pair.
  for (std::size_t i = 0; i < domain.size(); ++i) {
    for (std::size_t j = i + 1; j < domain.size(); ++j) {
      const Rational& b = domain.tick_at(i);
      const Rational& bp = domain.tick_at(j);
      const Rational dx = x(bp) - x(b);
      const Rational dp = p(bp) - p(b);
      ++report.pairs_checked;
      if (dx.is_negative())
        throw HypothesisViolated("x decreases on (" + b.str() + ", " + bp.str() + ")");
      if (b * dx > dp || dp > bp * dx)
        throw HypothesisViolated("payment sandwich fails on (" + b.str() + ", " + bp.str() + ")");
      if (mu(bp) - mu(b) > dp - b * dx)
        throw HypothesisViolated("revenue increment exceeds p(b')-p(b)-b(x(b')-x(b)) on (" +
                                 b.str() + ", " + bp.str() + ")");
      if (mu(b) - mu(bp) > bp * dx - dp)
        throw HypothesisViolated("revenue increment exceeds p(b)-p(b')-b'(x(b)-x(b')) on (" +
                                 bp.str() + ", " + b.str() + ")");
    }
  }
  // Pass 2: the conclusion, both directions.
  for (std::size_t i = 0; i < domain.size(); ++i) {
    for (std::size_t j = i + 1; j < domain.size(); ++j) {
      const Rational& b = domain.tick_at(i);
      const Rational& bp = domain.tick_at(j);
      const Rational slack = step * abs(x(bp) - x(b));
      if (mu(bp) - mu(b) > slack || mu(b) - mu(bp) > slack) {
        report.conclusion_holds = false;
        report.witness = "(" + b.str() + ", " + bp.str() + ")";
        return report;
      }
    }
  }
  return report;
}

}  // namespace sealbid
