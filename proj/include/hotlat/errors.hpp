#pragma once

#include <stdexcept>

namespace hotlat {

// Bad run configuration (schema violations, unknown keys, missing sections).
// The CLI maps these to exit code 2.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numerical-quality failures. The CLI maps these to exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A spectral gap required by an invariant computation closes somewhere on the
// parameter grid.
struct GapClosingError : NumericalError {
    using NumericalError::NumericalError;
};

// A link variable lost its magnitude (near-degenerate subspaces across
// neighboring grid points).
struct DegenerateLinkError : NumericalError {
    using NumericalError::NumericalError;
};

// Plaquette flux reached the principal-branch boundary; the discretization is
// too coarse to be trusted.
struct RefinementError : NumericalError {
    using NumericalError::NumericalError;
};

// A curvature sum failed to land on an integer.
struct QuantizationError : NumericalError {
    using NumericalError::NumericalError;
};

// Resource-cap violations, e.g. materializing an operator beyond the cap.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A requested state (edge side, band, ...) does not exist for the given
// parameters.
struct NotFoundError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hotlat
