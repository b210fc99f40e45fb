#pragma once

#include <stdexcept>
#include <string>

namespace efet {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input outside the mathematical domain of an operation (pole, slit point,
// radius out of range, ...).
struct DomainError : Error {
    using Error::Error;
};

// The requested accuracy cannot be reached at the current working precision;
// the caller should retry with a larger PrecisionContext.
struct PrecisionError : Error {
    using Error::Error;
};

// An iterative scheme (quadrature refinement, Newton, winding stabilization)
// failed to settle. Carries the last estimate and the remaining gap.
struct ConvergenceError : Error {
    ConvergenceError(const std::string& msg, double last_estimate, double gap)
        : Error(msg), last_estimate(last_estimate), gap(gap) {}
    double last_estimate;
    double gap;
};

// An integrand or callable produced a non-finite or otherwise unusable value.
struct EvaluationError : Error {
    using Error::Error;
};

// |F(z)| fell below its certified evaluation error; the point is too close
// to a zero for F'/F to be meaningful, a contour must be nudged.
struct ProximityToZeroError : EvaluationError {
    using EvaluationError::EvaluationError;
};

// Two routes that must agree (cell windings vs. global winding, monotone
// counts, ...) disagreed.
struct ConsistencyError : Error {
    using Error::Error;
};

// combi_find could not produce a witness (density assumption violated or R
// below the admissible minimum).
struct WitnessNotFoundError : Error {
    using Error::Error;
};

// fit_growth received a profile with no zeros at all.
struct DegenerateProfileError : Error {
    using Error::Error;
};

// Malformed or invalid experiment configuration.
struct ConfigError : Error {
    using Error::Error;
};

// Filesystem failure while emitting report files.
struct IOError : Error {
    using Error::Error;
};

}  // namespace efet
