#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "sealbid/crypto/merkle.hpp"
#include "sealbid/crypto/rs.hpp"
#include "sealbid/errors.hpp"
#include "sealbid/rng.hpp"

namespace sealbid::crypto {

// Proof of retrievability: spot-check openings of a committed Reed-Solomon
// codeword. The challenger samples kappa distinct indices; the holder
// answers with the symbols and a vector-commitment membership proof.

inline std::set<std::size_t> por_challenge(Rng& rng, std::size_t kappa,
                                           std::size_t codeword_len) {
  if (kappa > codeword_len)
    throw ChallengeTooLarge("por_challenge: kappa exceeds the codeword length");
  auto picks = rng.distinct_indices(kappa, codeword_len);
  return std::set<std::size_t>(picks.begin(), picks.end());
}

struct PorResponse {
  std::vector<Bytes> answers;  // symbol leaves at the challenged indices
  MerkleProof proof;
};

inline PorResponse por_respond(const MerkleAux& aux, const std::set<std::size_t>& query) {
  PorResponse resp;
  resp.proof = vc_open(aux, query);
  for (std::size_t index : query) resp.answers.push_back(aux.leaves.at(index));
  return resp;
}

inline bool por_verify(const MerkleDigest& digest, std::size_t codeword_len,
                       const std::set<std::size_t>& query, const PorResponse& response) {
  return vc_vf(codeword_len, digest, query, response.answers, response.proof);
}

inline void write_por_response(ByteWriter& w, const PorResponse& r) {
  w.u32(static_cast<std::uint32_t>(r.answers.size()));
  for (const auto& a : r.answers) w.blob(a);
  write_merkle_proof(w, r.proof);
}

inline PorResponse read_por_response(ByteReader& r) {
  PorResponse resp;
  const std::uint32_t count = r.u32();
  for (std::uint32_t i = 0; i < count; ++i) resp.answers.push_back(r.blob());
  resp.proof = read_merkle_proof(r);
  return resp;
}

}  // namespace sealbid::crypto
