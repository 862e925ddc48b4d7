// Copyright 2026 The ringeq Authors
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

#ifndef RINGEQ_ERROR_HPP_
#define RINGEQ_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace ringeq {

enum class ErrorCode {
  // Validation errors: the input violates a documented precondition.
  kDuplicateVertex,
  kUnknownTerminal,
  kDuplicateDemand,
  kSelfLoopDemand,
  kInvalidInstance,
  kInvalidGraph,
  kInvalidCostFunction,
  kInvalidGame,
  kInvalidProfile,
  kProfileShapeMismatch,
  kParseError,
  // Operational refusals.
  kSearchSpaceTooLarge,
  kNotApplicable,
  kNotStrict,
  kSizeBound,
  // Internal assertions: these indicate a bug, never bad input.
  kRelabelFailed,
  kVerificationFailed,
};

constexpr std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateVertex: return "DuplicateVertex";
    case ErrorCode::kUnknownTerminal: return "UnknownTerminal";
    case ErrorCode::kDuplicateDemand: return "DuplicateDemand";
    case ErrorCode::kSelfLoopDemand: return "SelfLoopDemand";
    case ErrorCode::kInvalidInstance: return "InvalidInstance";
    case ErrorCode::kInvalidGraph: return "InvalidGraph";
    case ErrorCode::kInvalidCostFunction: return "InvalidCostFunction";
    case ErrorCode::kInvalidGame: return "InvalidGame";
    case ErrorCode::kInvalidProfile: return "InvalidProfile";
    case ErrorCode::kProfileShapeMismatch: return "ProfileShapeMismatch";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kSearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::kNotApplicable: return "NotApplicable";
    case ErrorCode::kNotStrict: return "NotStrict";
    case ErrorCode::kSizeBound: return "SizeBound";
    case ErrorCode::kRelabelFailed: return "RelabelFailed";
    case ErrorCode::kVerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

constexpr bool is_internal_error(ErrorCode code) {
  return code == ErrorCode::kRelabelFailed ||
         code == ErrorCode::kVerificationFailed;
}

constexpr bool is_validation_error(ErrorCode code) {
  return code <= ErrorCode::kParseError;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ringeq

#endif  // RINGEQ_ERROR_HPP_
