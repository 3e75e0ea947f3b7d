#pragma once

#include <stdexcept>
#include <string>

namespace l0lab {

// Bad caller input: dimension mismatches, malformed JSON, out-of-range
// arguments. CLI maps this to exit code 2.
class InvalidInputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Base for errors raised by an analysis that was set up correctly but cannot
// proceed. CLI maps these to exit code 1.
class AnalysisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The requested residual level sigma is below the best achievable one.
class InfeasibleError : public AnalysisError {
public:
    InfeasibleError(const std::string& msg, double sigma_star)
        : AnalysisError(msg), sigma_star(sigma_star) {}
    double sigma_star;
};

// An enumeration guard (column cap, support cap, sign cap) was exceeded.
class ResourceLimitError : public AnalysisError {
public:
    using AnalysisError::AnalysisError;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public AnalysisError {
public:
    using AnalysisError::AnalysisError;
};

}  // namespace l0lab
