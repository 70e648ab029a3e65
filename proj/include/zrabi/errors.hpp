// errors.hpp — exception types thrown by the zrabi library

#pragma once

#include <stdexcept>
#include <string>

namespace zrabi {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Construction / parameter validation
struct InvalidDimension : Error { using Error::Error; };
struct DimensionError : Error { using Error::Error; };
struct NonHermitianParams : Error { using Error::Error; };
struct MissingParams : Error { using Error::Error; };
struct UnsupportedDimension : Error { using Error::Error; };
struct PreconditionError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// Eigensolver
struct NotHermitian : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct TruncationTooSmall : Error { using Error::Error; };

// Symmetry decomposition
struct SymmetryBroken : Error { using Error::Error; };
struct FormulaMismatch : Error { using Error::Error; };

// Continued-fraction solver
struct CouplingZero : Error { using Error::Error; };
struct NotAnEigenvalue : Error { using Error::Error; };

// Exceptional-level search
struct NoCrossingFound : Error { using Error::Error; };

} // namespace zrabi
