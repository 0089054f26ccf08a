// Copyright 2026 The axial-sampler Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace axial {

enum class ErrorCode {
  NonSquare,
  DimensionTooSmall,
  NonFinite,
  AsymmetryTooLarge,
  NotPositiveSemiDefinite,
  ZeroTrace,
  ParseError,
  NotOnSphere,
  InconsistentState,
  AllZeroWeights,
  NegativeWeight,
  InvalidShape,
  DegenerateState,
  DegenerateAngle,
  OracleStalled,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::AsymmetryTooLarge: return "AsymmetryTooLarge";
    case ErrorCode::NotPositiveSemiDefinite: return "NotPositiveSemiDefinite";
    case ErrorCode::ZeroTrace: return "ZeroTrace";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotOnSphere: return "NotOnSphere";
    case ErrorCode::InconsistentState: return "InconsistentState";
    case ErrorCode::AllZeroWeights: return "AllZeroWeights";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::InvalidShape: return "InvalidShape";
    case ErrorCode::DegenerateState: return "DegenerateState";
    case ErrorCode::DegenerateAngle: return "DegenerateAngle";
    case ErrorCode::OracleStalled: return "OracleStalled";
  }
  return "Unknown";
}

/// True for failures that arise while computing on a valid input, as opposed
/// to rejecting the input itself.
constexpr bool is_numeric_failure(ErrorCode code) {
  return code == ErrorCode::DegenerateState ||
         code == ErrorCode::DegenerateAngle ||
         code == ErrorCode::OracleStalled;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace axial
