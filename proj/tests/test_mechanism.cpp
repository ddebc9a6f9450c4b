#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "sealbid/mechanism.hpp"

using namespace sealbid;

namespace {

const Identity kA{1}, kB{2}, kC{3};

ValueDomain grid11() { return ValueDomain::grid(11); }
ValueDomain three() { return ValueDomain({Rational(0), Rational(1, 2), Rational(1)}); }

Rational r(const char* s) { return Rational::parse(s); }

CoinString coin(std::uint64_t v = 42) { return CoinString::from_u64(v, 128); }

/// Expected outcome checks against an exact distribution.
Rational win_prob(const OutcomeDistribution& d, Identity id) {
  return marginal_of(d, id).alloc_prob;
}

}  // namespace

TEST_CASE("bid vector rejects seller id and duplicates") {
  CHECK_THROWS_AS(BidVector({{Identity{0}, r("0.5")}}), InvalidBid);
  CHECK_THROWS_AS(BidVector({{kA, r("0.5")}, {kA, r("0.3")}}), DuplicateIdentity);
}

TEST_CASE("second price: basic payment rule") {
  // k=1, reserve 0.2 on the 0.1 grid, bids 0.5 and 0.3:
  // threshold 0.3, A=1, alpha=0, q=1/2, winner pays 0.3/2 + 0.4/2 = 0.35
  auto out = second_price_rules(grid11(), r("0.2"), 1, BidVector({{kA, r("0.5")}, {kB, r("0.3")}}),
                                coin());
  CHECK(out.allocation_of(kA) == 1);
  CHECK(out.allocation_of(kB) == 0);
  CHECK(out.payment_of(kA) == r("0.35"));
  CHECK(out.payment_of(kB) == r("0"));
  CHECK(out.items_sold == 1);
  CHECK(out.seller_revenue == r("0.35"));
  CHECK(out.platform_revenue == r("0"));
}

TEST_CASE("second price: all bids below reserve") {
  auto out = second_price_rules(grid11(), r("0.2"), 1, BidVector({{kA, r("0.1")}}), coin());
  CHECK(out.items_sold == 0);
  CHECK(out.allocation_of(kA) == 0);
  CHECK(out.seller_revenue == r("0"));
}

TEST_CASE("second price: single bidder pays the reserve") {
  // n <= k: synthetic threshold is the reserve, no submitted bid equals it,
  // so q = 1 and the winner pays exactly the reserve.
  auto out = second_price_rules(grid11(), r("0.2"), 1, BidVector({{kA, r("0.5")}}), coin());
  CHECK(out.allocation_of(kA) == 1);
  CHECK(out.payment_of(kA) == r("0.2"));
}

TEST_CASE("second price: tie at the threshold") {
  // Two equal bids, one item: the winner is uniform over {A, B} and pays
  // its own bid (a confirmed bid equal to the threshold).
  auto dist = second_price_outcomes(grid11(), r("0.2"), 1,
                                    BidVector({{kA, r("0.4")}, {kB, r("0.4")}}));
  REQUIRE(dist.size() == 2);
  CHECK(win_prob(dist, kA) == r("1/2"));
  CHECK(win_prob(dist, kB) == r("1/2"));
  for (const auto& w : dist) {
    CHECK(w.outcome.items_sold == 1);
    CHECK(w.outcome.seller_revenue == r("0.4"));
    for (const auto& [id, x] : w.outcome.allocations)
      if (x == 1) CHECK(w.outcome.payment_of(id) == r("0.4"));
  }

  // every coin must realize one of the two support outcomes
  std::set<std::uint64_t> winners;
  for (std::uint64_t c = 0; c < 64; ++c) {
    auto out = second_price_rules(grid11(), r("0.2"), 1,
                                  BidVector({{kA, r("0.4")}, {kB, r("0.4")}}), coin(c));
    CHECK(out.items_sold == 1);
    winners.insert(out.allocation_of(kA) == 1 ? kA.value : kB.value);
  }
  CHECK(winners.size() == 2);  // both tie-break outcomes occur
}

TEST_CASE("second price: q-rule with a partially confirmed tie") {
  // bids (0.7, 0.4, 0.4), k=1: threshold 0.4, A=2, alpha=0, q=1/3;
  // the 0.7 winner pays 0.4/3 + 0.5*2/3 = 7/15.
  auto out = second_price_rules(grid11(), r("0.2"), 1,
                                BidVector({{kA, r("0.7")}, {kB, r("0.4")}, {kC, r("0.4")}}),
                                coin());
  CHECK(out.allocation_of(kA) == 1);
  CHECK(out.payment_of(kA) == r("7/15"));

  // k=2 over the same bids: threshold is still 0.4 (third bid), A=2, alpha=1.
  // The confirmed tied buyer pays 0.4; the 0.7 buyer pays q-mixed price
  // with q = 2/3: 0.4*2/3 + 0.5/3 = 13/30.
  auto d2 = second_price_outcomes(grid11(), r("0.2"), 2,
                                  BidVector({{kA, r("0.7")}, {kB, r("0.4")}, {kC, r("0.4")}}));
  REQUIRE(d2.size() == 2);
  CHECK(win_prob(d2, kA) == r("1"));
  CHECK(win_prob(d2, kB) == r("1/2"));
  CHECK(win_prob(d2, kC) == r("1/2"));
  for (const auto& w : d2) {
    CHECK(w.outcome.payment_of(kA) == r("13/30"));
    CHECK(w.outcome.items_sold == 2);
  }
}

TEST_CASE("second price: all bids tied at the top tick") {
  // threshold equals the top tick, so no bid can be strictly greater and
  // the successor tick is never needed
  auto d = second_price_outcomes(three(), r("0"), 1, BidVector({{kA, r("1")}, {kB, r("1")}}));
  REQUIRE(d.size() == 2);
  CHECK(win_prob(d, kA) == r("1/2"));
  for (const auto& w : d) {
    CHECK(w.outcome.items_sold == 1);
    CHECK(w.outcome.seller_revenue == r("1"));
  }
}

TEST_CASE("second price: invalid inputs") {
  CHECK_THROWS_AS(
      second_price_rules(grid11(), r("0.2"), 1, BidVector({{kA, r("0.15")}}), coin()),
      InvalidBid);
  CHECK_THROWS_AS(
      second_price_rules(grid11(), r("0.25"), 1, BidVector({{kA, r("0.5")}}), coin()),
      InvalidBid);
}

TEST_CASE("second price allocation is monotone in the own bid") {
  ValueDomain dom = ValueDomain::grid(5);
  for (std::size_t k = 1; k <= 2; ++k) {
    // sweep every opposing profile of two buyers
    for (std::size_t b1 = 0; b1 < dom.size(); ++b1)
      for (std::size_t b2 = 0; b2 < dom.size(); ++b2) {
        Rational prev(-1);
        for (const auto& own : dom.ticks()) {
          auto dist = second_price_outcomes(
              dom, r("1/4"), k,
              BidVector({{kA, own}, {kB, dom.tick_at(b1)}, {kC, dom.tick_at(b2)}}));
          Rational x = win_prob(dist, kA);
          CHECK(prev <= x);
          prev = x;
        }
      }
  }
}

TEST_CASE("weak symmetry: permuting equal-bid identities permutes outcomes") {
  // bids (A: 0.4, B: 0.4, C: 0.2): swapping A and B swaps their marginals
  auto d1 = second_price_outcomes(grid11(), r("0.2"), 1,
                                  BidVector({{kA, r("0.4")}, {kB, r("0.4")}, {kC, r("0.2")}}));
  auto d2 = second_price_outcomes(grid11(), r("0.2"), 1,
                                  BidVector({{kB, r("0.4")}, {kA, r("0.4")}, {kC, r("0.2")}}));
  CHECK(win_prob(d1, kA) == win_prob(d2, kB));
  CHECK(win_prob(d1, kB) == win_prob(d2, kA));
  CHECK(win_prob(d1, kA) == win_prob(d1, kB));
  CHECK(marginal_of(d1, kA).expected_payment == marginal_of(d1, kB).expected_payment);
}

TEST_CASE("optimal payment: posted-reserve single buyer") {
  ValueDomain dom = three();
  auto alloc = [&](const Rational& b) {
    return b >= r("1/2") ? Rational(1) : Rational(0);
  };
  CHECK(optimal_payment(dom, alloc, r("1/2")) == r("1/2"));
  CHECK(optimal_payment(dom, alloc, r("1")) == r("1/2"));
  CHECK(optimal_payment(dom, alloc, r("0")) == r("0"));

  auto zero = [](const Rational&) { return Rational(0); };
  for (const auto& t : dom.ticks()) CHECK(optimal_payment(dom, zero, t) == r("0"));

  auto bad = [&](const Rational& b) { return b == r("1/2") ? Rational(1) : Rational(0); };
  CHECK_THROWS_AS(optimal_payment(dom, bad, r("1")), NonMonotoneAllocation);
}

TEST_CASE("expected virtual surplus equals expected optimal payment") {
  auto dist = DiscreteDistribution::uniform(three());
  auto alloc = [&](const Rational& b) {
    return b >= r("1/2") ? Rational(1) : Rational(0);
  };
  CHECK(expected_virtual_surplus(dist, alloc) == r("1/3"));
  Rational expected_payment;
  for (std::size_t i = 0; i < 3; ++i)
    expected_payment += dist.pmf(i) * optimal_payment(dist.domain(), alloc, dist.domain().tick_at(i));
  CHECK(expected_payment == r("1/3"));

  auto zero = [](const Rational&) { return Rational(0); };
  CHECK(expected_virtual_surplus(dist, zero) == r("0"));
}

TEST_CASE("second price payment agrees with the optimal payment rule") {
  // For every fixed opposing profile, the expected payment at each own bid
  // equals the ladder formula evaluated on the allocation curve.
  ValueDomain dom = ValueDomain::grid(5);
  auto dist = DiscreteDistribution::uniform(dom);
  Rational res = reserve(dist);
  for (std::size_t k = 1; k <= 2; ++k)
    for (std::size_t b1 = 0; b1 < dom.size(); ++b1)
      for (std::size_t b2 = 0; b2 < dom.size(); ++b2) {
        auto alloc = [&](const Rational& own) {
          return win_prob(second_price_outcomes(
                              dom, res, k,
                              BidVector({{kA, own},
                                         {kB, dom.tick_at(b1)},
                                         {kC, dom.tick_at(b2)}})),
                          kA);
        };
        for (const auto& own : dom.ticks()) {
          auto d = second_price_outcomes(
              dom, res, k,
              BidVector({{kA, own}, {kB, dom.tick_at(b1)}, {kC, dom.tick_at(b2)}}));
          CHECK(marginal_of(d, kA).expected_payment == optimal_payment(dom, alloc, own));
        }
      }
}

TEST_CASE("ascending auction: hand-traced run") {
  // grid 0.1, geometric(3/5) prior puts the opening price at 0.2
  auto dist = DiscreteDistribution::geometric(grid11(), r("3/5"));
  REQUIRE(reserve(dist) == r("0.2"));
  auto res = ascending_auction(grid11(), dist, 1,
                               BidVector({{kA, r("0.7")}, {kB, r("0.4")}, {kC, r("0.4")}}),
                               coin());
  REQUIRE(res.final_price.has_value());
  CHECK(*res.final_price == r("0.4"));
  CHECK(res.outcome.allocation_of(kA) == 1);
  CHECK(res.outcome.payment_of(kA) == r("0.4"));
  CHECK(res.outcome.items_sold == 1);
  CHECK(res.outcome.seller_revenue == r("0.4"));
  CHECK(res.outcome.platform_revenue == r("0"));
}

TEST_CASE("ascending auction: nobody registers") {
  auto dist = DiscreteDistribution::geometric(grid11(), r("3/5"));
  auto res = ascending_auction(grid11(), dist, 1, BidVector({{kA, r("0.1")}, {kB, r("0")}}),
                               coin());
  REQUIRE(res.final_price.has_value());
  CHECK(*res.final_price == r("0.2"));  // the opening round still posts
  CHECK(res.outcome.items_sold == 0);
  CHECK(res.outcome.seller_revenue == r("0"));
}

TEST_CASE("ascending auction: no competition stops at the opening price") {
  // Two buyers, two items: |R| <= k already holds in the opening round, so
  // both win immediately at the reserve.
  auto dist = DiscreteDistribution::geometric(grid11(), r("3/5"));
  auto res = ascending_auction(grid11(), dist, 2, BidVector({{kA, r("0.9")}, {kB, r("0.9")}}),
                               coin());
  REQUIRE(res.final_price.has_value());
  CHECK(*res.final_price == r("0.2"));
  CHECK(res.outcome.allocation_of(kA) == 1);
  CHECK(res.outcome.allocation_of(kB) == 1);
  CHECK(res.outcome.payment_of(kA) == r("0.2"));
  CHECK(res.outcome.payment_of(kB) == r("0.2"));
  CHECK(res.outcome.seller_revenue == r("0.4"));
}

TEST_CASE("ascending auction: simultaneous drop fills from the droppers") {
  auto dist = DiscreteDistribution::geometric(grid11(), r("3/5"));
  auto d = ascending_outcomes(grid11(), dist, 2,
                              BidVector({{kA, r("0.9")}, {kB, r("0.9")}, {kC, r("0.9")}}));
  // all three drop together at 0.9; two winners are drawn from the droppers
  REQUIRE(d.size() == 3);
  for (Identity id : {kA, kB, kC}) CHECK(win_prob(d, id) == r("2/3"));
  for (const auto& w : d) {
    CHECK(w.outcome.items_sold == 2);
    CHECK(w.outcome.seller_revenue == r("1.8"));
    for (const auto& [id, x] : w.outcome.allocations)
      if (x == 1) CHECK(w.outcome.payment_of(id) == r("0.9"));
  }
  auto run = ascending_auction(grid11(), dist, 2,
                               BidVector({{kA, r("0.9")}, {kB, r("0.9")}, {kC, r("0.9")}}),
                               coin());
  REQUIRE(run.final_price.has_value());
  CHECK(*run.final_price == r("0.9"));
  CHECK(run.outcome.items_sold == 2);
}

TEST_CASE("ascending auction: buyers at the opening price register then drop") {
  auto dist = DiscreteDistribution::geometric(grid11(), r("3/5"));
  auto res = ascending_auction(grid11(), dist, 2, BidVector({{kA, r("0.2")}, {kB, r("0.5")}}),
                               coin());
  // A registers (v >= 0.2) but drops at the opening round; no back-fill there.
  REQUIRE(res.final_price.has_value());
  CHECK(*res.final_price == r("0.2"));
  CHECK(res.outcome.allocation_of(kA) == 0);
  CHECK(res.outcome.allocation_of(kB) == 1);
  CHECK(res.outcome.payment_of(kB) == r("0.2"));
  CHECK(res.outcome.items_sold == 1);
}

TEST_CASE("ascending auction: strategy overrides replace behavior") {
  auto dist = DiscreteDistribution::geometric(grid11(), r("3/5"));
  BidVector values({{kA, r("0.7")}, {kB, r("0.5")}});
  // kA plays as if its value were 0.3: it drops first and kB wins at 0.3
  auto res = ascending_auction(grid11(), dist, 1, values, {{kA, r("0.3")}}, coin());
  CHECK(res.outcome.allocation_of(kA) == 0);
  CHECK(res.outcome.allocation_of(kB) == 1);
  CHECK(res.outcome.payment_of(kB) == r("0.3"));
}

TEST_CASE("ascending distribution backfill is uniform") {
  auto dist = DiscreteDistribution::geometric(grid11(), r("3/5"));
  auto d = ascending_outcomes(grid11(), dist, 1,
                              BidVector({{kA, r("0.6")}, {kB, r("0.6")}, {kC, r("0.3")}}));
  REQUIRE(d.size() == 2);
  CHECK(win_prob(d, kA) == r("1/2"));
  CHECK(win_prob(d, kB) == r("1/2"));
  CHECK(win_prob(d, kC) == r("0"));
  for (const auto& w : d) CHECK(w.outcome.seller_revenue == r("0.6"));
}

TEST_CASE("outcome validators") {
  auto out = second_price_rules(grid11(), r("0.2"), 1, BidVector({{kA, r("0.5")}, {kB, r("0.3")}}),
                                coin());
  BidVector values({{kA, r("0.5")}, {kB, r("0.3")}});
  CHECK(outcome_consistent(out));
  CHECK(outcome_budget_feasible(out));
  CHECK(outcome_individually_rational(out, values));

  AuctionOutcome bad = out;
  bad.items_sold = 2;
  CHECK_FALSE(outcome_consistent(bad));
  bad = out;
  bad.seller_revenue = r("2");
  CHECK_FALSE(outcome_budget_feasible(bad));
}

TEST_CASE("ideal auction runner") {
  SecondPriceRules rules(grid11(), r("0.2"), 1);
  BidVector honest({{kA, r("0.5")}, {kB, r("0.3")}});

  SECTION("empty hook reproduces the rules directly") {
    auto report = run_ideal_auction(rules, honest, nullptr, coin());
    CHECK_FALSE(report.aborted);
    CHECK(report.outcome == rules.run(honest, coin()));
    CHECK(report.honest_bid_count == 2);
  }

  SECTION("hook injecting a high bid displaces the honest winner") {
    struct Sniper : StrategicHook {
      std::vector<Bid> inject(std::size_t) override { return {{Identity{99}, Rational(1)}}; }
    } sniper;
    auto report = run_ideal_auction(rules, honest, &sniper, coin());
    CHECK_FALSE(report.aborted);
    CHECK(report.outcome.allocation_of(Identity{99}) == 1);
    CHECK(report.outcome.allocation_of(kA) == 0);
    // the injected bid pays per the rule: threshold 0.5, q=1/2 -> 0.55
    CHECK(report.outcome.payment_of(Identity{99}) == r("0.55"));
    REQUIRE(report.strategic_identities.size() == 1);
    CHECK(report.strategic_identities[0] == Identity{99});
  }

  SECTION("hook abort zeroes the run") {
    struct Aborter : StrategicHook {
      bool approve(const AuctionOutcome&) override { return false; }
    } aborter;
    auto report = run_ideal_auction(rules, honest, &aborter, coin());
    CHECK(report.aborted);
  }

  SECTION("duplicate identity across honest and strategic bids") {
    struct Clasher : StrategicHook {
      std::vector<Bid> inject(std::size_t) override { return {{Identity{1}, Rational(1)}}; }
    } clasher;
    CHECK_THROWS_AS(run_ideal_auction(rules, honest, &clasher, coin()), DuplicateIdentity);
  }
}

TEST_CASE("per-run invariants over random bid vectors") {
  ValueDomain dom = ValueDomain::grid(6);
  auto dist = DiscreteDistribution::uniform(dom);
  Rational res = reserve(dist);
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng.below(4);
    std::size_t k = 1 + rng.below(3);
    std::vector<Bid> bids;
    for (std::size_t i = 0; i < n; ++i)
      bids.push_back({Identity{i + 1}, dom.tick_at(rng.below(dom.size()))});
    BidVector values(bids);
    CoinString c = CoinString::from_u64(rng.next_u64(), 128);

    for (const AuctionOutcome& out :
         {second_price_rules(dom, res, k, values, c),
          ascending_auction(dom, dist, k, values, c).outcome}) {
      CHECK(outcome_consistent(out));
      CHECK(outcome_budget_feasible(out));
      CHECK(outcome_individually_rational(out, values));
      CHECK(out.platform_revenue == r("0"));
      CHECK(out.items_sold <= static_cast<long>(k));
    }
  }
}

TEST_CASE("outcome json round-trip") {
  auto out = second_price_rules(grid11(), r("0.2"), 1, BidVector({{kA, r("0.5")}, {kB, r("0.3")}}),
                                coin());
  auto j = outcome_to_json(out);
  CHECK(j["payments"]["1"] == "7/20");
  CHECK(j["t"] == 1);
  CHECK(outcome_from_json(j) == out);
}
