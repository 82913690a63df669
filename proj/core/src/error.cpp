#include "gridshock/error.hpp"

namespace gridshock {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::NegativeSpeed: return "NegativeSpeed";
    case ErrorCode::IncompleteGrid: return "IncompleteGrid";
    case ErrorCode::DuplicateEntry: return "DuplicateEntry";
    case ErrorCode::UnknownTract: return "UnknownTract";
    case ErrorCode::CannotConnect: return "CannotConnect";
    case ErrorCode::TractMismatch: return "TractMismatch";
    case ErrorCode::UnknownStrategy: return "UnknownStrategy";
    case ErrorCode::InfeasibleTask: return "InfeasibleTask";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::NonIncreasingIntercepts: return "NonIncreasingIntercepts";
    case ErrorCode::EmptyPopulation: return "EmptyPopulation";
    case ErrorCode::UndefinedGroup: return "UndefinedGroup";
    case ErrorCode::UnknownBaseline: return "UnknownBaseline";
    case ErrorCode::MismatchedPopulation: return "MismatchedPopulation";
    case ErrorCode::UnknownFormat: return "UnknownFormat";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace gridshock
