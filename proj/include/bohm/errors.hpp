#pragma once

#include <stdexcept>
#include <string>

namespace bohm {

/// Malformed text input (population tokens, family specs, database lines).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on a family or matrix does not hold.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The requested enumeration is larger than the configured matrix budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A verification-scale cost guard (dimension or family size) was hit.
class GuardExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical root finding did not converge.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace bohm
