#pragma once

#include <stdexcept>
#include <string>

namespace gentleq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// linear algebra
struct NotHermitian : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// states
struct OutsideBall : Error { using Error::Error; };
struct WrongDimension : Error { using Error::Error; };
struct InvalidState : Error { using Error::Error; };

// measurements
struct NotAProjector : Error { using Error::Error; };
struct NotAProjectorPVM : Error { using Error::Error; };
struct CompletenessViolation : Error { using Error::Error; };
struct ZeroProbabilityOutcome : Error { using Error::Error; };
struct UnknownLabel : Error { using Error::Error; };

// gentleness / divergences / learning
struct InvalidAlpha : Error { using Error::Error; };
struct AlphaOutOfRange : Error { using Error::Error; };
struct SupportMismatch : Error { using Error::Error; };
struct InvalidInput : Error { using Error::Error; };
struct TooFewCopies : Error { using Error::Error; };

// harness
struct ConfigInvalid : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

} // namespace gentleq
