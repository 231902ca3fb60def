#pragma once

#include <stdexcept>
#include <string>

namespace edlab {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

/// Malformed input: bad config values, unnormalized distributions,
/// mismatched supports, packets too close to a wall, and the like.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// The requested update cannot be satisfied by any distribution
/// (contradictory or out-of-range constraints).
class InfeasibleError : public Error {
  public:
    using Error::Error;
};

/// Numerical breakdown: non-finite values, solver failure, overflow.
class NumericError : public Error {
  public:
    using Error::Error;
};

/// Expression parse failure; `offset` is the byte offset into the source.
class ParseError : public Error {
  public:
    ParseError(const std::string &msg, std::size_t offset)
        : Error(msg + " (at byte " + std::to_string(offset) + ")"), offset(offset) {}
    std::size_t offset;
};

/// Expression evaluation failure (domain errors such as log of a
/// non-positive number).
class EvalError : public Error {
  public:
    using Error::Error;
};

} // namespace edlab
