#pragma once

#include <stdexcept>
#include <string>

namespace dpo {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// market-data
struct MalformedCsv : Error { using Error::Error; };
struct NonPositivePrice : Error { using Error::Error; };
struct MissingCell : Error { using Error::Error; };
struct DuplicateCell : Error { using Error::Error; };
struct InsufficientHistory : Error { using Error::Error; };

// dpo-problem
struct IndexOutOfRange : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct ZeroRisk : Error { using Error::Error; };

// circuit-ir
struct DegenerateBlock : Error { using Error::Error; };
struct TooFewTimeSteps : Error { using Error::Error; };
struct DisconnectedMap : Error { using Error::Error; };

// statevector-sim
struct ParamCountMismatch : Error { using Error::Error; };
struct QubitCapExceeded : Error { using Error::Error; };

// optimizers
struct PopulationTooSmall : Error { using Error::Error; };

// baselines
struct TooLarge : Error { using Error::Error; };

}  // namespace dpo
