#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "sealbid/errors.hpp"
#include "sealbid/hash.hpp"

namespace sealbid::crypto {

// Merkle-tree vector commitment over byte-string leaves. Domain-separated
// hashing: 0x00 leaf, 0x01 inner node, 0x02 padding leaf. The leaf layer is
// padded to a power of two; verification takes the committed vector length
// so out-of-range indices are position-bound.

struct MerkleDigest {
  Digest256 root{};
  std::uint64_t leaf_count = 0;

  friend bool operator==(const MerkleDigest&, const MerkleDigest&) = default;
};

struct MerkleAux {
  std::vector<Bytes> leaves;
  std::vector<std::vector<Digest256>> levels;  // levels[0] = leaf hashes
};

/// Sibling paths for each queried index, in ascending index order.
struct MerkleProof {
  std::vector<std::vector<Digest256>> paths;
};

namespace detail {

inline Digest256 leaf_hash(const Bytes& payload) {
  Bytes buf;
  buf.reserve(payload.size() + 1);
  buf.push_back(0x00);
  buf.insert(buf.end(), payload.begin(), payload.end());
  return sha256(buf);
}

inline Digest256 pad_hash() { return sha256(Bytes{0x02}); }

inline Digest256 node_hash(const Digest256& left, const Digest256& right) {
  Bytes buf;
  buf.reserve(65);
  buf.push_back(0x01);
  buf.insert(buf.end(), left.begin(), left.end());
  buf.insert(buf.end(), right.begin(), right.end());
  return sha256(buf);
}

inline std::size_t padded_size(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace detail

inline std::pair<MerkleDigest, MerkleAux> vc_digest(const std::vector<Bytes>& vector_data) {
  MerkleAux aux;
  aux.leaves = vector_data;
  std::vector<Digest256> level;
  level.reserve(detail::padded_size(vector_data.size()));
  for (const auto& leaf : vector_data) level.push_back(detail::leaf_hash(leaf));
  if (level.empty()) level.push_back(detail::pad_hash());
  level.resize(detail::padded_size(level.size()), detail::pad_hash());
  aux.levels.push_back(level);
  while (aux.levels.back().size() > 1) {
    const auto& prev = aux.levels.back();
    std::vector<Digest256> next;
    next.reserve(prev.size() / 2);
    for (std::size_t i = 0; i < prev.size(); i += 2)
      next.push_back(detail::node_hash(prev[i], prev[i + 1]));
    aux.levels.push_back(std::move(next));
  }
  MerkleDigest digest{aux.levels.back().front(), vector_data.size()};
  return {digest, aux};
}

inline MerkleProof vc_open(const MerkleAux& aux, const std::set<std::size_t>& query) {
  MerkleProof proof;
  for (std::size_t index : query) {
    if (index >= aux.leaves.size()) throw IndexOutOfRange("vc_open: index past vector end");
    std::vector<Digest256> path;
    std::size_t pos = index;
    for (std::size_t lvl = 0; lvl + 1 < aux.levels.size(); ++lvl) {
      path.push_back(aux.levels[lvl][pos ^ 1]);
      pos >>= 1;
    }
    proof.paths.push_back(std::move(path));
  }
  return proof;
}

/// Vf(ell, digest, Q, ans, proof): ans holds the claimed payloads in the
/// same ascending order as Q. An empty query verifies vacuously.
inline bool vc_vf(std::uint64_t leaf_count, const MerkleDigest& digest,
                  const std::set<std::size_t>& query, const std::vector<Bytes>& answers,
                  const MerkleProof& proof) {
  if (digest.leaf_count != leaf_count) return false;
  if (answers.size() != query.size() || proof.paths.size() != query.size()) return false;
  const std::size_t depth =
      [&] {
        std::size_t d = 0, p = detail::padded_size(static_cast<std::size_t>(leaf_count));
        while (p > 1) p >>= 1, ++d;
        return d;
      }();
  std::size_t slot = 0;
  for (std::size_t index : query) {
    if (index >= leaf_count) return false;
    if (proof.paths[slot].size() != depth) return false;
    Digest256 acc = detail::leaf_hash(answers[slot]);
    std::size_t pos = index;
    for (const auto& sibling : proof.paths[slot]) {
      acc = (pos & 1) ? detail::node_hash(sibling, acc) : detail::node_hash(acc, sibling);
      pos >>= 1;
    }
    if (acc != digest.root) return false;
    ++slot;
  }
  return true;
}

inline void write_merkle_digest(ByteWriter& w, const MerkleDigest& d) {
  w.raw(digest_bytes(d.root));
  w.u64(d.leaf_count);
}

inline MerkleDigest read_merkle_digest(ByteReader& r) {
  MerkleDigest d;
  for (auto& b : d.root) b = r.u8();
  d.leaf_count = r.u64();
  return d;
}

inline void write_merkle_proof(ByteWriter& w, const MerkleProof& p) {
  w.u32(static_cast<std::uint32_t>(p.paths.size()));
  for (const auto& path : p.paths) {
    w.u32(static_cast<std::uint32_t>(path.size()));
    for (const auto& d : path) w.raw(digest_bytes(d));
  }
}

inline MerkleProof read_merkle_proof(ByteReader& r) {
  MerkleProof p;
  const std::uint32_t count = r.u32();
  for (std::uint32_t i = 0; i < count; ++i) {
    std::vector<Digest256> path(r.u32());
    for (auto& d : path)
      for (auto& b : d) b = r.u8();
    p.paths.push_back(std::move(path));
  }
  return p;
}

}  // namespace sealbid::crypto
