#pragma once

#include <stdexcept>
#include <string>

namespace orddom {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain input. The CLI maps this to exit code 2.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A construction was requested for a pair whose hypotheses it does not meet.
class NotApplicable : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// A search ran out of budget before it could decide. Distinct from a
/// certified empty answer; the CLI maps this to exit code 1.
class Inconclusive : public Error {
public:
    using Error::Error;
};

} // namespace orddom
