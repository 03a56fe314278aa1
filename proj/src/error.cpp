#include "cichon/error.hpp"

namespace cichon {

std::string_view errorName(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::HorizonMismatch: return "HorizonMismatch";
    case ErrorCode::HorizonTooShort: return "HorizonTooShort";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::ZeroWidth: return "ZeroWidth";
    case ErrorCode::WidthExceeded: return "WidthExceeded";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NoAdmissibleString: return "NoAdmissibleString";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::InvalidCondition: return "InvalidCondition";
    case ErrorCode::NotBelowProjection: return "NotBelowProjection";
    case ErrorCode::GrowthTooSmall: return "GrowthTooSmall";
    case ErrorCode::SideTooSmall: return "SideTooSmall";
    case ErrorCode::FamilyTooLarge: return "FamilyTooLarge";
    case ErrorCode::RankTooLarge: return "RankTooLarge";
    case ErrorCode::UnknownForcing: return "UnknownForcing";
    case ErrorCode::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(errorName(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

}  // namespace cichon
