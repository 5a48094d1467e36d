#pragma once

#include <stdexcept>
#include <string>

namespace spindm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input matrix fails the Hermiticity tolerance.
struct NotHermitianError : Error {
    using Error::Error;
};

/// A spectral map produced NaN/Inf (e.g. exp overflow); caller must use a
/// shifted formulation instead.
struct NonFiniteResultError : Error {
    using Error::Error;
};

/// Operation requires T > 0; use the dedicated T = 0 ground-state path.
struct ZeroTemperatureError : Error {
    using Error::Error;
};

/// Density matrix violates Hermiticity / unit trace / positivity tolerances.
struct InvalidStateError : Error {
    using Error::Error;
};

/// Parameters do not satisfy the constraints of the requested model preset.
struct PresetMismatchError : Error {
    using Error::Error;
};

/// Requested closed-form branch is not valid for these parameters.
struct BranchInvalidError : Error {
    using Error::Error;
};

/// Closed-form evolution formulas require B = b = 0.
struct FieldsNonzeroError : Error {
    using Error::Error;
};

/// No closed-form critical value is known for this combination.
struct NoClosedFormError : Error {
    using Error::Error;
};

/// Implicit critical equation has no root in the documented bracket.
struct NoRootError : Error {
    using Error::Error;
};

/// Bisection bracket endpoints have the same entangled/unentangled status.
struct BracketInvalidError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace spindm
