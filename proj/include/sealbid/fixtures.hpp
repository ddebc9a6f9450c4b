#pragma once

#include <string>
#include <utility>

#include "sealbid/mechanism.hpp"

namespace sealbid {

/// Known-broken reference rules. These exist so the verification harness can
/// prove its own sensitivity: a sweep that passes the shipped mechanisms must
/// flag these.

/// First-price variant of the reserve auction: same (monotone) allocation,
/// but winners pay their own bid. Violates the payment sandwich whenever two
/// bids win with equal allocation but different payments.
class BrokenFirstPriceRules final : public AuctionRules {
 public:
  BrokenFirstPriceRules(ValueDomain domain, Rational reserve_price, std::size_t k)
      : inner_(std::move(domain), std::move(reserve_price), k) {}

  std::string name() const override { return "broken-first-price"; }
  const ValueDomain& domain() const override { return inner_.domain(); }

  AuctionOutcome run(const BidVector& bids, const CoinString& r) const override {
    return repay(inner_.run(bids, r), bids);
  }
  OutcomeDistribution outcomes(const BidVector& bids) const override {
    OutcomeDistribution dist = inner_.outcomes(bids);
    for (auto& w : dist) w.outcome = repay(w.outcome, bids);
    return dist;
  }

 private:
  AuctionOutcome repay(AuctionOutcome out, const BidVector& bids) const {
    for (auto& [id, p] : out.payments)
      if (out.allocation_of(id) > 0) p = *bids.bid_of(id);
    out.seller_revenue = out.total_payment();
    out.platform_revenue = Rational(0);
    return out;
  }

  SecondPriceRules inner_;
};

/// Second price, except the platform skims half a tick per item sold.
/// Platform revenue is nonzero but still inside the almost-zero-revenue
/// bound; used to exercise the bound check with a non-trivial value.
class TickSkimmingRules final : public AuctionRules {
 public:
  TickSkimmingRules(ValueDomain domain, Rational reserve_price, std::size_t k)
      : inner_(std::move(domain), std::move(reserve_price), k),
        skim_(tick(inner_.domain()) / Rational(2)) {}

  std::string name() const override { return "tick-skimming"; }
  const ValueDomain& domain() const override { return inner_.domain(); }

  AuctionOutcome run(const BidVector& bids, const CoinString& r) const override {
    return skim(inner_.run(bids, r));
  }
  OutcomeDistribution outcomes(const BidVector& bids) const override {
    OutcomeDistribution dist = inner_.outcomes(bids);
    for (auto& w : dist) w.outcome = skim(w.outcome);
    return dist;
  }

 private:
  AuctionOutcome skim(AuctionOutcome out) const {
    Rational cut = Rational(out.items_sold) * skim_;
    if (cut > out.seller_revenue) cut = out.seller_revenue;
    out.seller_revenue -= cut;
    out.platform_revenue = out.total_payment() - out.seller_revenue;
    return out;
  }

  SecondPriceRules inner_;
  Rational skim_;
};

}  // namespace sealbid
