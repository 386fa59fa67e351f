#include "arrow/error.hpp"

namespace arrow {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptySupport: return "EmptySupport";
    case ErrorCode::MassOverflow: return "MassOverflow";
    case ErrorCode::PredicateTypeError: return "PredicateTypeError";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NonNumericOutcome: return "NonNumericOutcome";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::NonFreshOutput: return "NonFreshOutput";
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::UnknownType: return "UnknownType";
    case ErrorCode::DuplicateDeclaration: return "DuplicateDeclaration";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::CarrierMismatch: return "CarrierMismatch";
    case ErrorCode::NotEncodable: return "NotEncodable";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ElaborationError: return "ElaborationError";
  }
  return "Unknown";
}

SourceError::SourceError(ErrorCode code, std::size_t line, std::size_t column, const std::string& message)
    : Error(code, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace arrow
