#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ostrowski {

// Base of every error raised by the library. The CLI maps subclasses to exit
// codes (see cli.hpp).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A convergent denominator (or a value derived from one) left the 63-bit range.
class OverflowError : public Error {
public:
    OverflowError(const std::string& what, std::size_t largest_safe_index)
        : Error(what), largest_safe_index_(largest_safe_index) {}

    std::size_t largest_safe_index() const noexcept { return largest_safe_index_; }

private:
    std::size_t largest_safe_index_;
};

// A finite quotient list was read past its end.
class IndexError : public Error {
public:
    using Error::Error;
};

// An argument lies outside the range supported by a scale or table.
class RangeError : public Error {
public:
    using Error::Error;
};

// A digit string, atom table or configuration violates an invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A transform length exceeds the configured cap.
class CapError : public Error {
public:
    using Error::Error;
};

// Malformed textual input (alpha/function spec grammar, CLI arguments).
class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace ostrowski
