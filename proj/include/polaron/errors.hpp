#pragma once

#include <stdexcept>
#include <string>

namespace polaron {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Enumeration request beyond the configured combinatorial cap.
struct SizeLimitError : Error {
    using Error::Error;
};

// A momentum integral (or one of its quadrature nodes) is divergent.
struct IntegrabilityError : Error {
    using Error::Error;
};

// Schur elimination hit a nonpositive pivot.
struct SingularFormError : Error {
    using Error::Error;
};

// Mismatched vector dimensions.
struct DimensionError : Error {
    using Error::Error;
};

// Contour truncation insufficient for the requested tolerance.
struct ContourError : Error {
    using Error::Error;
};

// Energy-curve fit window rejected (truncation dominates) or curve too sparse.
struct WindowError : Error {
    using Error::Error;
};

// Config file / CLI usage problems (exit code 2 in the CLI).
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace polaron
