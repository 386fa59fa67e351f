#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace arrow {

enum class ErrorCode {
  EmptySupport,
  MassOverflow,
  PredicateTypeError,
  DomainError,
  NonNumericOutcome,
  UnboundVariable,
  TypeMismatch,
  NonFreshOutput,
  UnknownGenerator,
  UnknownType,
  DuplicateDeclaration,
  ArityMismatch,
  CarrierMismatch,
  NotEncodable,
  ParseError,
  ElaborationError,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; `code()` tells callers what failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Errors raised while reading `.arrow` source carry a position.
class SourceError : public Error {
 public:
  SourceError(ErrorCode code, std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace arrow
