#pragma once

#include <stdexcept>
#include <string>

namespace cuspcount {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on user-supplied data was violated (bad modulus, element
/// outside the parameter set, malformed endoclass, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An enumeration would have to walk a group larger than the configured cap.
/// Carries the offending modulus as a decimal string.
class CapExceeded : public Error {
public:
    CapExceeded(const std::string& what, std::string modulus)
        : Error(what + " (modulus " + modulus + ")"), modulus_(std::move(modulus)) {}

    const std::string& modulus() const { return modulus_; }

private:
    std::string modulus_;
};

/// Two routes that must agree by construction disagreed. Never the caller's
/// fault; always reported loudly.
class ConsistencyFailure : public Error {
public:
    using Error::Error;
};

} // namespace cuspcount
