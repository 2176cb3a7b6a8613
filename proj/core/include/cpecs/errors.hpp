#pragma once

#include <stdexcept>
#include <string>

namespace cpecs {

/// Caller violated a precondition (wrong dimensions, bad arguments).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument is well-formed but outside the mathematical domain of the operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Enumeration or lattice too large for the configured limit.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace cpecs
