#pragma once

#include <stdexcept>
#include <string>

namespace stablewave {

// Parameter / configuration problems (bad law parameters, mesh mismatches,
// unknown keys). Mapped to exit code 2 by the CLI.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numeric-domain problems (non-finite integrands, degenerate fits, D_j <= 0).
// Mapped to exit code 3 by the CLI.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown by the estimator when the log-scale denominator is not positive;
// callers that build traces catch it and flag the row instead of aborting.
class SignError : public NumericError {
public:
    using NumericError::NumericError;
};

// Filesystem problems. Mapped to exit code 4 by the CLI.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace stablewave
