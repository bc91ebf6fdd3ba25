#pragma once

#include <stdexcept>
#include <string>

namespace dbarrier {

// Bad user input: malformed parameters, payoff invariants, incompatible options.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Evaluation outside the analyticity domain of a characteristic exponent.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Base for failures of the numerical scheme itself.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A contour or grid violates a build-time invariant (branch cut crossing,
// exponent overflow, intersecting contours).
class ContourError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// The alternating barrier-crossing series failed to contract.
class DivergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace dbarrier
