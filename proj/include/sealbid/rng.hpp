#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "sealbid/bytes.hpp"

namespace sealbid {

/// Deterministic RNG with portable output.
///
/// mt19937_64 output is fully specified by the standard; the bounded draw
/// below uses rejection sampling instead of std::uniform_int_distribution,
/// whose mapping is implementation-defined. Identical seeds therefore give
/// identical streams on every platform, which the trace-replay and
/// byte-identical-output guarantees rely on.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  explicit Rng(const Bytes& seed) {
    std::seed_seq seq(seed.begin(), seed.end());
    engine_.seed(seq);
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform draw from [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

  Bytes bytes(std::size_t n) {
    Bytes out;
    out.reserve(n);
    while (out.size() < n) {
      std::uint64_t v = engine_();
      for (int s = 56; s >= 0 && out.size() < n; s -= 8)
        out.push_back(static_cast<std::uint8_t>(v >> s));
    }
    return out;
  }

  /// Fisher-Yates shuffle driven by this stream.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[below(i)]);
  }

  /// Uniform sample of `count` distinct indices from [0, universe).
  std::vector<std::size_t> distinct_indices(std::size_t count, std::size_t universe) {
    std::vector<std::size_t> all(universe);
    for (std::size_t i = 0; i < universe; ++i) all[i] = i;
    for (std::size_t i = 0; i < count; ++i)
      std::swap(all[i], all[i + below(universe - i)]);
    all.resize(count);
    std::sort(all.begin(), all.end());
    return all;
  }

  std::uint64_t derive_seed() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sealbid
