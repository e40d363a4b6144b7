#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace lpa {

enum class ErrorCode {
  FieldMismatch,
  InvalidField,
  DivisionByZero,
  ZeroPolynomial,
  ConstantPolynomial,
  ZeroConstantTerm,
  ZeroElement,
  UnitElement,
  NotCoprime,
  ProductMismatch,
  ResourceLimit,
  DuplicateId,
  UnknownVertex,
  UnknownArrow,
  NotACycle,
  NotHereditary,
  NotAdmissible,
  MalformedMorphism,
  CycleHasExit,
  CyclesNotDisjoint,
  NotDlf,
  UnsupportedShape,
  NotRowFinite,
  NotAcyclic,
  MalformedGenerators,
  InvalidIdeal,
  MeetJoinFailure,
  ParseError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::ConstantPolynomial: return "ConstantPolynomial";
    case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::UnitElement: return "UnitElement";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::ProductMismatch: return "ProductMismatch";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::UnknownArrow: return "UnknownArrow";
    case ErrorCode::NotACycle: return "NotACycle";
    case ErrorCode::NotHereditary: return "NotHereditary";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::MalformedMorphism: return "MalformedMorphism";
    case ErrorCode::CycleHasExit: return "CycleHasExit";
    case ErrorCode::CyclesNotDisjoint: return "CyclesNotDisjoint";
    case ErrorCode::NotDlf: return "NotDlf";
    case ErrorCode::UnsupportedShape: return "UnsupportedShape";
    case ErrorCode::NotRowFinite: return "NotRowFinite";
    case ErrorCode::NotAcyclic: return "NotAcyclic";
    case ErrorCode::MalformedGenerators: return "MalformedGenerators";
    case ErrorCode::InvalidIdeal: return "InvalidIdeal";
    case ErrorCode::MeetJoinFailure: return "MeetJoinFailure";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// CLI maps codes onto process exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, std::string message) {
  throw Error(code, std::move(message));
}

}  // namespace lpa
