#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cichon {

/// Every failure the library can report. The enumerator names double as the
/// user-facing error names printed by the CLI.
enum class ErrorCode {
  HorizonMismatch,
  HorizonTooShort,
  EmptyFamily,
  ZeroWidth,
  WidthExceeded,
  ShapeMismatch,
  NoAdmissibleString,
  Overflow,
  KindMismatch,
  InvalidCondition,
  NotBelowProjection,
  GrowthTooSmall,
  SideTooSmall,
  FamilyTooLarge,
  RankTooLarge,
  UnknownForcing,
  MalformedInput,
};

std::string_view errorName(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace cichon
