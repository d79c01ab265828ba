#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace invpoly {

enum class Errc {
  Parse,
  ZeroCoefficient,
  InvalidMatrix,
  NotInvertible,
  NonSquare,
  BadShape,
  SingularMatrix,
  ZeroVector,
  NotQuasihomogeneous,
  NotIsolated,
  LimitExceeded,
  SignConventionViolated,
  ClosedFormMismatch,
  FermatNotAugmentable,
  BadB,
  IdentityViolated,
  LengthMismatch,
  NonzeroSumD,
  GorensteinDivisibility,
  TerminalMismatch,
  UnsupportedCase,
  InvalidClassification,
  Config,
};

inline std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::Parse: return "ParseError";
    case Errc::ZeroCoefficient: return "ZeroCoefficient";
    case Errc::InvalidMatrix: return "InvalidMatrix";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::NonSquare: return "NonSquare";
    case Errc::BadShape: return "BadShape";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::NotQuasihomogeneous: return "NotQuasihomogeneous";
    case Errc::NotIsolated: return "NotIsolated";
    case Errc::LimitExceeded: return "LimitExceeded";
    case Errc::SignConventionViolated: return "SignConventionViolated";
    case Errc::ClosedFormMismatch: return "ClosedFormMismatch";
    case Errc::FermatNotAugmentable: return "FermatNotAugmentable";
    case Errc::BadB: return "BadB";
    case Errc::IdentityViolated: return "IdentityViolated";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NonzeroSumD: return "NonzeroSumD";
    case Errc::GorensteinDivisibility: return "GorensteinDivisibility";
    case Errc::TerminalMismatch: return "TerminalMismatch";
    case Errc::UnsupportedCase: return "UnsupportedCase";
    case Errc::InvalidClassification: return "InvalidClassification";
    case Errc::Config: return "ConfigError";
  }
  return "Error";
}

/// Base class of everything this library throws.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what, Errc code = Errc::Parse)
      : Error(code, what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

enum class NotInvertibleReason {
  NonSquare,
  SingularMatrix,
  BadRowShape,
  NoPositiveWeights,
  ExponentBelowTwo,
};

inline std::string_view reason_name(NotInvertibleReason r) {
  switch (r) {
    case NotInvertibleReason::NonSquare: return "NonSquare";
    case NotInvertibleReason::SingularMatrix: return "SingularMatrix";
    case NotInvertibleReason::BadRowShape: return "BadRowShape";
    case NotInvertibleReason::NoPositiveWeights: return "NoPositiveWeights";
    case NotInvertibleReason::ExponentBelowTwo: return "ExponentBelowTwo";
  }
  return "Unknown";
}

class NotInvertible : public Error {
 public:
  NotInvertible(NotInvertibleReason reason, const std::string& what)
      : Error(Errc::NotInvertible, std::string(reason_name(reason)) + ": " + what),
        reason_(reason) {}

  NotInvertibleReason reason() const noexcept { return reason_; }

 private:
  NotInvertibleReason reason_;
};

/// An internal consistency check failed. These always indicate a defect
/// (or, for sign checks, an input that is not a cleave).
class Defect : public Error {
 public:
  Defect(Errc code, std::string expected, std::string actual, const std::string& what)
      : Error(code, what + " (expected " + expected + ", got " + actual + ")"),
        expected_(std::move(expected)),
        actual_(std::move(actual)) {}

  const std::string& expected() const noexcept { return expected_; }
  const std::string& actual() const noexcept { return actual_; }

 private:
  std::string expected_;
  std::string actual_;
};

}  // namespace invpoly
