#pragma once

#include <stdexcept>
#include <string>

namespace sealbid {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// domain
struct NotATick : Error { using Error::Error; };
struct NoSuccessor : Error { using Error::Error; };
struct ZeroDensity : Error { using Error::Error; };
struct InvalidDomain : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// mechanism
struct InvalidBid : Error { using Error::Error; };
struct DuplicateIdentity : Error { using Error::Error; };
struct NonMonotoneAllocation : Error { using Error::Error; };

// incentives
struct EnumerationTooLarge : Error { using Error::Error; };
struct InvalidScriptForCoalition : Error { using Error::Error; };
struct HypothesisViolated : Error { using Error::Error; };

// crypto
struct MalformedCommitment : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct InsufficientSymbols : Error { using Error::Error; };
struct ChallengeTooLarge : Error { using Error::Error; };

// protocol
struct LengthMismatch : Error { using Error::Error; };
struct ConfigInvalid : Error { using Error::Error; };

}  // namespace sealbid
