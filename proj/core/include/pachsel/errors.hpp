#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace pachsel {

// Base class for every error raised by the library. Callers that only care
// about success/failure can catch this; the CLI maps subclasses onto exit
// codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input files or command-line values.
class ParseError : public Error {
 public:
  using Error::Error;
};

// An operation was called on inputs that violate its documented contract.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// An enumeration or retry budget was exhausted before a definite answer.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// A verification step produced a negative verdict.
class VerificationError : public Error {
 public:
  using Error::Error;
};

// A proven invariant failed; indicates a bug rather than bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

enum class ErrorKind { Parse, Precondition, Budget, Verification, Internal };

inline ErrorKind classify(const Error& error) noexcept;

// Wraps an error raised inside a named pipeline stage, keeping the class of
// the original so callers can still tell a budget problem from bad input.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(stage + ": " + cause.what()), stage_(std::move(stage)), kind_(classify(cause)) {}
  const std::string& stage() const noexcept { return stage_; }
  ErrorKind kind() const noexcept { return kind_; }

 private:
  std::string stage_;
  ErrorKind kind_;
};

inline ErrorKind classify(const Error& error) noexcept {
  if (auto* staged = dynamic_cast<const StageError*>(&error)) return staged->kind();
  if (dynamic_cast<const ParseError*>(&error)) return ErrorKind::Parse;
  if (dynamic_cast<const PreconditionError*>(&error)) return ErrorKind::Precondition;
  if (dynamic_cast<const BudgetError*>(&error)) return ErrorKind::Budget;
  if (dynamic_cast<const VerificationError*>(&error)) return ErrorKind::Verification;
  return ErrorKind::Internal;
}

}  // namespace pachsel
