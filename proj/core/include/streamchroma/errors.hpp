#pragma once

#include <stdexcept>
#include <string>

namespace streamchroma {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Stream / graph input errors.
struct MalformedHeader : Error { using Error::Error; };
struct SelfLoop : Error { using Error::Error; };
struct VertexOutOfRange : Error { using Error::Error; };
struct DuplicateEdge : Error { using Error::Error; };

// Generator errors.
struct InfeasibleSpec : Error { using Error::Error; };

// Field / sketch errors.
struct Overflow : Error { using Error::Error; };

// Engine errors.
struct DegenerateRates : Error { using Error::Error; };

// Oracle errors.
struct BudgetExceeded : Error { using Error::Error; };

// Gadget errors.
struct ParameterViolation : Error { using Error::Error; };
struct Undecodable : Error { using Error::Error; };

// Choosability errors.
struct ShapeMismatch : Error { using Error::Error; };

} // namespace streamchroma
