#pragma once

#include <stdexcept>
#include <string>

namespace lppl {

// Bad or unusable input data (missing file, parse failure, empty intersection).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A window does not hold enough observations for the requested operation.
struct InsufficientDataError : InputError {
    using InputError::InputError;
};

// The linear subproblem is singular or numerically unusable.
struct DegenerateDesignError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every multistart grid cell was degenerate.
struct NoCandidateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A whole scan produced zero successful fits.
struct ScanFailedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All bootstrap replicas were unqualified; no distribution to report.
struct SignificanceUndefinedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace lppl
