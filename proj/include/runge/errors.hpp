#pragma once

#include <stdexcept>
#include <string>

namespace runge {

/// Input outside an operation's domain (non-prime level, |z| >= 1, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A truncated series could not reach its tail target within max_terms.
class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A product factor vanished exactly, so the log-modulus is -infinity.
class PoleAtNode : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The curve model has bad reduction at the requested prime.
class BadReduction : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace runge
