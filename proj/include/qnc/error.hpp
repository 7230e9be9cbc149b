#pragma once

#include <stdexcept>
#include <string>

namespace qnc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated (non-coprime weights,
/// out-of-range indices, malformed words).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A computation would exceed its resource budget.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// A numeric value could not be certified at the requested truncation.
class CertificationError : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed. Indicates a bug, not a math case.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace qnc
