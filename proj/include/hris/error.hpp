// SPDX-License-Identifier: Apache-2.0
#ifndef HRIS_ERROR_HPP
#define HRIS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hris {

enum class ErrorCode {
  MissingOptionLine,
  UnsupportedFormat,
  MalformedDataLine,
  DuplicateFrequency,
  HeaderMismatch,
  InvalidTable,
  DegenerateDenominator,
  TransmissionTooSmall,
  EmptySweep,
  NonFiniteResult,
  InvalidSpec,
  PanelTooSmall,
  DegenerateLoad,
  NoResonanceInBracket,
  MissingSensingGroup,
  EmptyGrid,
  DimensionMismatch,
  InvalidArgument,
  IoError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingOptionLine: return "MissingOptionLine";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::MalformedDataLine: return "MalformedDataLine";
    case ErrorCode::DuplicateFrequency: return "DuplicateFrequency";
    case ErrorCode::HeaderMismatch: return "HeaderMismatch";
    case ErrorCode::InvalidTable: return "InvalidTable";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::TransmissionTooSmall: return "TransmissionTooSmall";
    case ErrorCode::EmptySweep: return "EmptySweep";
    case ErrorCode::NonFiniteResult: return "NonFiniteResult";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::PanelTooSmall: return "PanelTooSmall";
    case ErrorCode::DegenerateLoad: return "DegenerateLoad";
    case ErrorCode::NoResonanceInBracket: return "NoResonanceInBracket";
    case ErrorCode::MissingSensingGroup: return "MissingSensingGroup";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  // Message without the code prefix, for rethrows that add context.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace hris

#endif
