#pragma once

#include <memory>
#include <string>

#include "sealbid/crypto/relation.hpp"

namespace sealbid::crypto {

// Argument of knowledge for the outcome-consistency relation. The backend
// is pluggable behind (prove, verify) so a succinct argument can be dropped
// in without touching the protocol; the shipped backend is transparent:
// the proof is the witness itself and verification re-checks the relation.
// Knowledge soundness is then immediate; succinctness is not provided.

struct AokProof {
  Bytes blob;
};

class AokBackend {
 public:
  virtual ~AokBackend() = default;
  virtual std::string name() const = 0;
  virtual AokProof prove(const RelationStatement& statement,
                         const RelationWitness& witness) const = 0;
  virtual bool verify(const RelationStatement& statement, const AokProof& proof) const = 0;
};

class TransparentAok final : public AokBackend {
 public:
  TransparentAok(const NitcCrs& crs, const AuctionRules& rules) : crs_(&crs), rules_(&rules) {}

  std::string name() const override { return "transparent"; }

  AokProof prove(const RelationStatement&, const RelationWitness& witness) const override {
    return AokProof{witness_bytes(witness)};
  }

  bool verify(const RelationStatement& statement, const AokProof& proof) const override {
    try {
      RelationWitness witness = witness_from_bytes(proof.blob);
      return static_cast<bool>(check_relation(statement, witness, *crs_, *rules_));
    } catch (const Error&) {
      return false;
    }
  }

 private:
  const NitcCrs* crs_;
  const AuctionRules* rules_;
};

}  // namespace sealbid::crypto
