#pragma once

#include <stdexcept>
#include <string>

namespace braidforms {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A monomial left the configured variable-degree or form-degree caps.
struct CapExceededError : Error {
    using Error::Error;
};

// The context cannot support the requested computation at all, e.g. word
// blocks in form degree >= 2 for a non-graded endomorphism of a polynomial
// ring without enough relations.
struct UnsupportedContextError : Error {
    using Error::Error;
};

// A block matrix that was required to be invertible is not.
struct SingularBlockError : Error {
    using Error::Error;
};

// Scalar division by zero, including evaluation of a rational function at a
// pole.
struct DivisionByZeroError : Error {
    using Error::Error;
};

// Input that violates a structural precondition, e.g. the braiding recursion
// failing to terminate on data it cannot make sense of.
struct MalformedInputError : Error {
    using Error::Error;
};

// A requested subquotient window is not closed under the braiding.
struct WindowUnstableError : Error {
    using Error::Error;
};

// Problems with a configuration file or with command usage.
struct ConfigError : Error {
    using Error::Error;
};

// Expression syntax error with 1-based position information.
struct ParseError : Error {
    int line;
    int column;

    ParseError(const std::string& what_, int line_, int column_)
        : Error(what_ + " (line " + std::to_string(line_) + ", column " +
                std::to_string(column_) + ")"),
          line(line_),
          column(column_) {}
};

}  // namespace braidforms
