#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "sealbid/bytes.hpp"
#include "sealbid/errors.hpp"

namespace sealbid::crypto {

// Systematic Reed-Solomon erasure code over GF(65537), evaluation points
// 0..N-1 with N = ceil(3L/2). Any L known positions reconstruct the
// message by Lagrange interpolation; the protocol's guaranteed bound is
// the 2/3 fraction, which is always >= L.

namespace gf {

inline constexpr std::uint32_t P = 65537;

inline std::uint32_t add(std::uint32_t a, std::uint32_t b) { return (a + b) % P; }
inline std::uint32_t sub(std::uint32_t a, std::uint32_t b) { return (a + P - b) % P; }
inline std::uint32_t mul(std::uint32_t a, std::uint32_t b) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % P);
}
inline std::uint32_t pow(std::uint32_t a, std::uint32_t e) {
  std::uint32_t acc = 1;
  while (e > 0) {
    if (e & 1) acc = mul(acc, a);
    a = mul(a, a);
    e >>= 1;
  }
  return acc;
}
inline std::uint32_t inv(std::uint32_t a) { return pow(a % P, P - 2); }

}  // namespace gf

struct RsCodeword {
  std::vector<std::uint32_t> symbols;
  std::size_t message_len = 0;

  friend bool operator==(const RsCodeword&, const RsCodeword&) = default;
};

inline std::size_t rs_codeword_len(std::size_t message_len) {
  return (3 * message_len + 1) / 2;
}

namespace detail {

/// Barycentric interpolation: weights w_i = prod_{j != i} 1/(x_i - x_j)
/// once, then O(L) per evaluation point.
struct Interpolant {
  std::vector<std::uint32_t> xs, ys, weights;

  Interpolant(std::vector<std::uint32_t> xs_in, std::vector<std::uint32_t> ys_in)
      : xs(std::move(xs_in)), ys(std::move(ys_in)) {
    weights.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      std::uint32_t den = 1;
      for (std::size_t j = 0; j < xs.size(); ++j)
        if (j != i) den = gf::mul(den, gf::sub(xs[i], xs[j]));
      weights[i] = gf::inv(den);
    }
  }

  /// After step k the accumulator holds
  /// sum_{i<k} y_i w_i prod_{j<k, j!=i} (x - x_j); the final value is P(x).
  std::uint32_t eval(std::uint32_t x) const {
    std::uint32_t acc = 0, prefix = 1;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (x == xs[i]) return ys[i];
      acc = gf::add(gf::mul(acc, gf::sub(x, xs[i])),
                    gf::mul(gf::mul(ys[i], weights[i]), prefix));
      prefix = gf::mul(prefix, gf::sub(x, xs[i]));
    }
    return acc;
  }
};

}  // namespace detail

inline RsCodeword rs_encode(const std::vector<std::uint32_t>& message) {
  if (message.empty()) throw InsufficientSymbols("rs_encode: empty message");
  for (std::uint32_t s : message)
    if (s >= gf::P) throw IndexOutOfRange("rs_encode: symbol outside GF(65537)");
  RsCodeword code;
  code.message_len = message.size();
  code.symbols = message;  // systematic prefix: points 0..L-1
  std::vector<std::uint32_t> xs(message.size());
  for (std::size_t i = 0; i < message.size(); ++i) xs[i] = static_cast<std::uint32_t>(i);
  detail::Interpolant poly(std::move(xs), message);
  const std::size_t total = rs_codeword_len(message.size());
  for (std::size_t x = message.size(); x < total; ++x)
    code.symbols.push_back(poly.eval(static_cast<std::uint32_t>(x)));
  return code;
}

/// Erasure reconstruction from any >= L known (position, symbol) pairs.
inline std::vector<std::uint32_t> rs_recons(const std::map<std::size_t, std::uint32_t>& known,
                                            std::size_t message_len) {
  if (known.size() < message_len)
    throw InsufficientSymbols("rs_recons: fewer known symbols than the message length");
  std::vector<std::uint32_t> xs, ys;
  xs.reserve(message_len);
  ys.reserve(message_len);
  for (const auto& [pos, sym] : known) {
    if (pos >= rs_codeword_len(message_len))
      throw IndexOutOfRange("rs_recons: position past codeword end");
    if (xs.size() == message_len) break;
    xs.push_back(static_cast<std::uint32_t>(pos));
    ys.push_back(sym % gf::P);
  }
  detail::Interpolant poly(std::move(xs), std::move(ys));
  std::vector<std::uint32_t> message(message_len);
  for (std::size_t i = 0; i < message_len; ++i)
    message[i] = poly.eval(static_cast<std::uint32_t>(i));
  return message;
}

// -- byte payload framing: u32 length as two symbols, then 2-byte chunks --

inline std::vector<std::uint32_t> bytes_to_symbols(const Bytes& data) {
  std::vector<std::uint32_t> symbols;
  const std::uint32_t len = static_cast<std::uint32_t>(data.size());
  symbols.push_back(len >> 16);
  symbols.push_back(len & 0xffff);
  for (std::size_t i = 0; i < data.size(); i += 2) {
    std::uint32_t hi = data[i];
    std::uint32_t lo = i + 1 < data.size() ? data[i + 1] : 0;
    symbols.push_back(hi << 8 | lo);
  }
  return symbols;
}

inline Bytes symbols_to_bytes(const std::vector<std::uint32_t>& symbols) {
  if (symbols.size() < 2) throw ParseError("symbols_to_bytes: missing length header");
  const std::size_t len = static_cast<std::size_t>(symbols[0]) << 16 | symbols[1];
  if ((len + 1) / 2 + 2 > symbols.size())
    throw ParseError("symbols_to_bytes: truncated symbol stream");
  Bytes out;
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    std::uint32_t sym = symbols[2 + i / 2];
    out.push_back(static_cast<std::uint8_t>(i % 2 == 0 ? sym >> 8 : sym & 0xff));
  }
  return out;
}

/// One 4-byte big-endian leaf per symbol, for committing codewords.
inline std::vector<Bytes> symbol_leaves(const std::vector<std::uint32_t>& symbols) {
  std::vector<Bytes> leaves;
  leaves.reserve(symbols.size());
  for (std::uint32_t s : symbols) {
    ByteWriter w;
    w.u32(s);
    leaves.push_back(w.take());
  }
  return leaves;
}

}  // namespace sealbid::crypto
