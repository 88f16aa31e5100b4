#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ifacediv {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Input vectors/containers that must have matching lengths do not.
class DimensionMismatch : public Error {
  public:
    using Error::Error;
};

/// An operation that requires at least one element received none.
class EmptyInput : public Error {
  public:
    using Error::Error;
};

/// Exact outcome enumeration was requested for more interfaces than the
/// 2^N evaluation bound allows.
class EnumerationTooLarge : public Error {
  public:
    using Error::Error;
};

/// k outside [1, N] for a k-out-of-N strategy.
class InvalidK : public Error {
  public:
    using Error::Error;
};

/// No grid point satisfies the allocation feasibility constraint.
class InfeasibleGrid : public Error {
  public:
    using Error::Error;
};

/// Argument outside the mathematical domain of the function.
class DomainError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

/// Malformed input file content; carries the 1-based line number.
class ParseError : public Error {
  public:
    ParseError(const std::string& what, std::uint64_t line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::uint64_t line() const { return line_; }

  private:
    std::uint64_t line_ = 0;
};

/// Trace alignment produced an empty join.
class NoOverlap : public Error {
  public:
    using Error::Error;
};

}  // namespace ifacediv
