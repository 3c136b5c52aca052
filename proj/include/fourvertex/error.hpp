#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fourvertex {

enum class ErrorCode {
  InvalidArgument,
  ZeroTotalCurvature,
  IdenticallyZero,
  HypothesisViolated,
  NoPositiveWindow,
  ConstructionFailed,
  TooFewSamples,
  LoopTouchesCore,
  NumericallyDegenerate,
  OriginOnLoop,
  InsufficientDensity,
  NoWindingAtRadius,
  PolishDiverged,
  SynthesisFailed,
  NoContact,
  ConstantCurvature,
  NotSimple,
  NotClosed,
  Io,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroTotalCurvature: return "ZeroTotalCurvature";
    case ErrorCode::IdenticallyZero: return "IdenticallyZero";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::NoPositiveWindow: return "NoPositiveWindow";
    case ErrorCode::ConstructionFailed: return "ConstructionFailed";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::LoopTouchesCore: return "LoopTouchesCore";
    case ErrorCode::NumericallyDegenerate: return "NumericallyDegenerate";
    case ErrorCode::OriginOnLoop: return "OriginOnLoop";
    case ErrorCode::InsufficientDensity: return "InsufficientDensity";
    case ErrorCode::NoWindingAtRadius: return "NoWindingAtRadius";
    case ErrorCode::PolishDiverged: return "PolishDiverged";
    case ErrorCode::SynthesisFailed: return "SynthesisFailed";
    case ErrorCode::NoContact: return "NoContact";
    case ErrorCode::ConstantCurvature: return "ConstantCurvature";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library. The code identifies the failure
/// class; the message carries the details.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

}  // namespace fourvertex
