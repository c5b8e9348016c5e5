#pragma once

#include <stdexcept>
#include <string>

namespace wfield {

// Base for all numerical failures raised by the toolkit.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonHermitianInput : NumericError {
    using NumericError::NumericError;
};

struct ConvergenceFailure : NumericError {
    using NumericError::NumericError;
};

struct NonUnitary : NumericError {
    using NumericError::NumericError;
};

struct ZeroVector : NumericError {
    using NumericError::NumericError;
};

struct NotRadialoid : NumericError {
    using NumericError::NumericError;
};

struct PeakNotAttained : NumericError {
    using NumericError::NumericError;
};

struct NotNormalized : NumericError {
    using NumericError::NumericError;
};

struct HypothesisNotMet : NumericError {
    using NumericError::NumericError;
};

// Malformed files, bad dimensions, non-finite data.
struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace wfield
