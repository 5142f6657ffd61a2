#pragma once

#include <stdexcept>
#include <string>

namespace bz {

/// Any violation of a documented precondition on mathematical input.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An enumeration guard (max n, max nodes) would be exceeded.
class GuardExceeded : public DomainError {
public:
    using DomainError::DomainError;
};

/// Raised by exact division when the quotient is not a Laurent polynomial.
class NotExactDivision : public DomainError {
public:
    using DomainError::DomainError;
};

} // namespace bz
