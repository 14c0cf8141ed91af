#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diffrec {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An index referred to a user or item outside the declared dimensions.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// The same (user, item) pair was supplied twice to a graph build.
class DuplicateLinkError : public Error {
public:
    using Error::Error;
};

/// A split fraction, parameter value or requested size is infeasible.
class SpecError : public Error {
public:
    using Error::Error;
};

/// Malformed input line; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// A rating outside the declared 1..5 scale; carries the line number.
class RatingRangeError : public ParseError {
public:
    using ParseError::ParseError;
};

/// The target user has no training links, so diffusion cannot start.
class ColdUserError : public Error {
public:
    using Error::Error;
};

/// A pairwise statistic was requested over fewer than two users.
class InsufficientPopulationError : public Error {
public:
    using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// A CLI command was invoked with missing or inconsistent inputs.
class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace diffrec
