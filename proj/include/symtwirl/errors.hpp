// Copyright 2026 The symtwirl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symtwirl {

enum class ErrorKind {
  InvalidMatrix,
  DimMismatch,
  UnsupportedSize,
  IndexOutOfRange,
  TooLarge,
  InvalidFactor,
  DecompositionFailed,
  InvalidBloch,
  NotSymmetric,
  NotSymmetricObservable,
  ShapeMismatch,
  DegenerateWeight,
  InvalidPrecision,
  InvalidShots,
  OddOnly,
  InvalidDelta,
  InvalidArgument,
  BoundViolation,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidMatrix: return "InvalidMatrix";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::UnsupportedSize: return "UnsupportedSize";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvalidFactor: return "InvalidFactor";
    case ErrorKind::DecompositionFailed: return "DecompositionFailed";
    case ErrorKind::InvalidBloch: return "InvalidBloch";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotSymmetricObservable: return "NotSymmetricObservable";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::DegenerateWeight: return "DegenerateWeight";
    case ErrorKind::InvalidPrecision: return "InvalidPrecision";
    case ErrorKind::InvalidShots: return "InvalidShots";
    case ErrorKind::OddOnly: return "OddOnly";
    case ErrorKind::InvalidDelta: return "InvalidDelta";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::BoundViolation: return "BoundViolation";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the ErrorKind tags so
/// callers (and the CLI exit-code mapping) can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Default numerical tolerances. Matrix tolerances are absolute on operators
/// whose max-norm is at most one and scale with the max-norm above that.
namespace tol {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kPsd = 1e-10;
inline constexpr double kUnitary = 1e-9;
inline constexpr double kDegenerateGap = 1e-9;
inline constexpr double kVarianceFloor = 1e-9;
inline constexpr double kImagResidue = 1e-10;
inline constexpr double kSymmetry = 1e-8;
inline constexpr double kCluster = 1e-7;
inline constexpr double kZeroWeight = 1e-12;
inline constexpr double kBlochPsd = 1e-9;
inline constexpr double kPinv = 1e-10;
inline constexpr double kMergeGap = 1e-9;
}  // namespace tol

}  // namespace symtwirl
