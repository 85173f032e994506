#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace padicmp {

enum class ErrorCode {
  NotPrime,
  OrdOfZero,
  TooShort,
  DivisionByZero,
  ParseError,
  NegativeInput,
  DomainMiss,
  BelowFloor,
  AboveCeiling,
  InvalidSpec,
  BadOrder,
  BadWindow,
  SelfCheckFailed,
  NotPreserving,
  Asymmetric,
  NonzeroDiagonal,
  NegativeEntry,
  ZeroDistance,
  NotUltrametric,
  SizeMismatch,
  TooLarge,
  NoPositiveDistances,
  NotTotallyOrdered,
  TotallyOrdered,
  Comparable,
  BadInterval,
  NotInGround,
  EmptyClass,
  InvariantBreach,
  BadSamples,
};

constexpr std::string_view to_string(ErrorCode c) noexcept {
  switch (c) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::OrdOfZero: return "OrdOfZero";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::DomainMiss: return "DomainMiss";
    case ErrorCode::BelowFloor: return "BelowFloor";
    case ErrorCode::AboveCeiling: return "AboveCeiling";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::BadOrder: return "BadOrder";
    case ErrorCode::BadWindow: return "BadWindow";
    case ErrorCode::SelfCheckFailed: return "SelfCheckFailed";
    case ErrorCode::NotPreserving: return "NotPreserving";
    case ErrorCode::Asymmetric: return "Asymmetric";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::ZeroDistance: return "ZeroDistance";
    case ErrorCode::NotUltrametric: return "NotUltrametric";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NoPositiveDistances: return "NoPositiveDistances";
    case ErrorCode::NotTotallyOrdered: return "NotTotallyOrdered";
    case ErrorCode::TotallyOrdered: return "TotallyOrdered";
    case ErrorCode::Comparable: return "Comparable";
    case ErrorCode::BadInterval: return "BadInterval";
    case ErrorCode::NotInGround: return "NotInGround";
    case ErrorCode::EmptyClass: return "EmptyClass";
    case ErrorCode::InvariantBreach: return "InvariantBreach";
    case ErrorCode::BadSamples: return "BadSamples";
  }
  return "Unknown";
}

/// Every failure raised by the library. The code is stable and machine
/// readable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Internal errors signal a broken invariant inside the library rather
  /// than bad input.
  bool internal() const noexcept {
    return code_ == ErrorCode::SelfCheckFailed || code_ == ErrorCode::InvariantBreach;
  }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace padicmp
