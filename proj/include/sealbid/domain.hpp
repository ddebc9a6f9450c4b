#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sealbid/errors.hpp"
#include "sealbid/rational.hpp"

namespace sealbid {

/// Normalized discrete value domain: exact ticks 0 = θ¹ < θ² < … < θᵀ ≤ 1.
class ValueDomain {
 public:
  explicit ValueDomain(std::vector<Rational> ticks) : ticks_(std::move(ticks)) {
    if (ticks_.size() < 2) throw InvalidDomain("value domain needs at least two ticks");
    if (!ticks_.front().is_zero()) throw InvalidDomain("value domain must contain 0");
    for (std::size_t i = 0; i + 1 < ticks_.size(); ++i)
      if (!(ticks_[i] < ticks_[i + 1]))
        throw InvalidDomain("ticks must be strictly increasing");
    if (ticks_.back() > Rational(1)) throw InvalidDomain("ticks must lie in [0, 1]");
  }

  /// Evenly spaced grid {0, 1/(T-1), ..., 1}.
  static ValueDomain grid(std::size_t tick_count) {
    if (tick_count < 2) throw InvalidDomain("grid needs at least two ticks");
    std::vector<Rational> ticks;
    ticks.reserve(tick_count);
    for (std::size_t i = 0; i < tick_count; ++i)
      ticks.emplace_back(static_cast<long>(i), static_cast<long>(tick_count - 1));
    return ValueDomain(std::move(ticks));
  }

  std::size_t size() const { return ticks_.size(); }
  const std::vector<Rational>& ticks() const { return ticks_; }
  const Rational& tick_at(std::size_t index) const { return ticks_.at(index); }
  const Rational& top() const { return ticks_.back(); }

  std::optional<std::size_t> index_of(const Rational& v) const {
    for (std::size_t i = 0; i < ticks_.size(); ++i)
      if (ticks_[i] == v) return i;
    return std::nullopt;
  }

  bool contains(const Rational& v) const { return index_of(v).has_value(); }

  friend bool operator==(const ValueDomain& a, const ValueDomain& b) {
    return a.ticks_ == b.ticks_;
  }

 private:
  std::vector<Rational> ticks_;
};

/// Largest gap between adjacent ticks.
inline Rational tick(const ValueDomain& domain) {
  Rational widest;
  for (std::size_t i = 0; i + 1 < domain.size(); ++i)
    widest = max(widest, domain.tick_at(i + 1) - domain.tick_at(i));
  return widest;
}

/// Smallest tick strictly larger than v. v must itself be a tick below θᵀ.
inline Rational next_tick(const ValueDomain& domain, const Rational& v) {
  auto idx = domain.index_of(v);
  if (!idx) throw NotATick("next_tick: " + v.str() + " is not a tick");
  if (*idx + 1 == domain.size()) throw NoSuccessor("next_tick: " + v.str() + " is the top tick");
  return domain.tick_at(*idx + 1);
}

/// Exact probability mass function over a value domain.
class DiscreteDistribution {
 public:
  DiscreteDistribution(ValueDomain domain, std::vector<Rational> pmf)
      : domain_(std::move(domain)), pmf_(std::move(pmf)) {
    if (pmf_.size() != domain_.size())
      throw InvalidDomain("pmf size does not match domain");
    Rational total;
    for (const auto& p : pmf_) {
      if (p.is_negative()) throw InvalidDomain("pmf entries must be non-negative");
      total += p;
    }
    if (total != Rational(1)) throw InvalidDomain("pmf must sum to exactly 1");
    cdf_.reserve(pmf_.size());
    Rational acc;
    for (const auto& p : pmf_) {
      acc += p;
      cdf_.push_back(acc);
    }
  }

  static DiscreteDistribution uniform(ValueDomain domain) {
    const long t = static_cast<long>(domain.size());
    std::vector<Rational> pmf(domain.size(), Rational(1, t));
    return DiscreteDistribution(std::move(domain), std::move(pmf));
  }

  /// Weights ratio^i, normalized exactly. A ratio below 1 skews mass toward
  /// low ticks, which pulls the reserve down; e.g. ratio 3/5 on the 0.1 grid
  /// puts the reserve at 0.2.
  static DiscreteDistribution geometric(ValueDomain domain, const Rational& ratio) {
    std::vector<Rational> weights;
    Rational w(1), total;
    for (std::size_t i = 0; i < domain.size(); ++i) {
      weights.push_back(w);
      total += w;
      w *= ratio;
    }
    for (auto& p : weights) p /= total;
    return DiscreteDistribution(std::move(domain), std::move(weights));
  }

  const ValueDomain& domain() const { return domain_; }
  const Rational& pmf(std::size_t index) const { return pmf_.at(index); }
  const Rational& cdf(std::size_t index) const { return cdf_.at(index); }

 private:
  ValueDomain domain_;
  std::vector<Rational> pmf_;
  std::vector<Rational> cdf_;
};

/// Virtual value φ(θⁱ) = θⁱ − (1 − F(θⁱ))/f(θⁱ) · (θⁱ⁺¹ − θⁱ), with
/// φ(θᵀ) = θᵀ unconditionally. Errors on f(θⁱ) = 0 for i < T rather than
/// returning an infinity.
inline Rational virtual_value(const DiscreteDistribution& dist, std::size_t index) {
  const ValueDomain& dom = dist.domain();
  if (index >= dom.size()) throw IndexOutOfRange("virtual_value: tick index out of range");
  if (index + 1 == dom.size()) return dom.top();
  if (dist.pmf(index).is_zero())
    throw ZeroDensity("virtual_value: zero density at tick " + dom.tick_at(index).str());
  const Rational gap = dom.tick_at(index + 1) - dom.tick_at(index);
  const Rational survivor = Rational(1) - dist.cdf(index);
  return dom.tick_at(index) - survivor / dist.pmf(index) * gap;
}

/// Regular iff φ is strictly increasing across ticks.
inline bool is_regular(const DiscreteDistribution& dist) {
  Rational prev = virtual_value(dist, 0);
  for (std::size_t i = 1; i < dist.domain().size(); ++i) {
    Rational cur = virtual_value(dist, i);
    if (!(prev < cur)) return false;
    prev = cur;
  }
  return true;
}

/// Smallest tick with non-negative virtual value. Ticks with zero density
/// (where φ is undefined) are skipped; φ(θᵀ) = θᵀ ≥ 0 guarantees existence.
inline Rational reserve(const DiscreteDistribution& dist) {
  for (std::size_t i = 0; i < dist.domain().size(); ++i) {
    if (i + 1 < dist.domain().size() && dist.pmf(i).is_zero()) continue;
    if (!virtual_value(dist, i).is_negative()) return dist.domain().tick_at(i);
  }
  throw InvalidDomain("reserve: unreachable, top tick has non-negative virtual value");
}

inline std::size_t reserve_index(const DiscreteDistribution& dist) {
  return *dist.domain().index_of(reserve(dist));
}

// ---------------------------------------------------------------------------
// JSON loading: {"ticks": ["0", "1/4", "0.5", ...], "pmf": [...]}.
// Entries are exact rational strings; decimals parse exactly.

inline ValueDomain domain_from_json(const nlohmann::json& j) {
  if (!j.contains("ticks") || !j["ticks"].is_array())
    throw ParseError("domain json: missing 'ticks' array");
  std::vector<Rational> ticks;
  for (const auto& t : j["ticks"]) ticks.push_back(Rational::parse(t.get<std::string>()));
  return ValueDomain(std::move(ticks));
}

inline DiscreteDistribution distribution_from_json(const nlohmann::json& j) {
  ValueDomain dom = domain_from_json(j);
  if (!j.contains("pmf") || !j["pmf"].is_array())
    throw ParseError("distribution json: missing 'pmf' array");
  std::vector<Rational> pmf;
  for (const auto& p : j["pmf"]) pmf.push_back(Rational::parse(p.get<std::string>()));
  return DiscreteDistribution(std::move(dom), std::move(pmf));
}

inline nlohmann::json domain_to_json(const ValueDomain& dom) {
  nlohmann::json j;
  j["ticks"] = nlohmann::json::array();
  for (const auto& t : dom.ticks()) j["ticks"].push_back(t.str());
  return j;
}

inline nlohmann::json distribution_to_json(const DiscreteDistribution& dist) {
  nlohmann::json j = domain_to_json(dist.domain());
  j["pmf"] = nlohmann::json::array();
  for (std::size_t i = 0; i < dist.domain().size(); ++i) j["pmf"].push_back(dist.pmf(i).str());
  return j;
}

}  // namespace sealbid
