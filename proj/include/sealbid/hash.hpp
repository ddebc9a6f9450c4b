#pragma once

#include <array>
#include <cstdint>

#include <openssl/evp.h>

#include "sealbid/bytes.hpp"

namespace sealbid {

/// 256-bit digest. The reference profile pins the hash to SHA-256.
using Digest256 = std::array<std::uint8_t, 32>;

inline Digest256 sha256(const Bytes& data) {
  Digest256 out{};
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr);
  return out;
}

inline Digest256 sha256(std::string_view s) { return sha256(to_bytes(s)); }

inline Bytes digest_bytes(const Digest256& d) { return Bytes(d.begin(), d.end()); }

inline std::string digest_hex(const Digest256& d) { return to_hex(digest_bytes(d)); }

/// SHA-256 in counter mode, used as the NITC stream cipher keystream.
inline Bytes sha256_keystream(const Digest256& key, std::size_t length) {
  Bytes out;
  out.reserve(length);
  std::uint64_t counter = 0;
  while (out.size() < length) {
    ByteWriter w;
    w.raw(digest_bytes(key));
    w.u64(counter++);
    Digest256 block = sha256(w.take());
    for (std::size_t i = 0; i < block.size() && out.size() < length; ++i)
      out.push_back(block[i]);
  }
  return out;
}

}  // namespace sealbid
