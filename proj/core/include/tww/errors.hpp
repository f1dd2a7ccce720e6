#pragma once

#include <stdexcept>
#include <string>

namespace tww {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed graph or sequence input.
class ParseError : public Error {
public:
    using Error::Error;
};

// Instance too large for a configured solver cap.
class CapExceededError : public Error {
public:
    using Error::Error;
};

// A claim the library verifies at runtime (width budget, structural
// invariant, ...) did not hold. Indicates a bug or a broken input contract.
class CheckError : public Error {
public:
    using Error::Error;
};

}  // namespace tww

#define TWW_CHECK(cond, msg)                                                  \
    do {                                                                      \
        if (!(cond)) throw ::tww::CheckError(std::string("check failed: ") + (msg)); \
    } while (0)
