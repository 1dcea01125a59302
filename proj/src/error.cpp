// Copyright 2026 The certmarket Authors
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

#include "certmarket/error.hpp"

#include <string>

namespace certmarket {

std::string_view ErrorName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonAscendingSupport: return "NonAscendingSupport";
    case ErrorCode::kInvalidProbabilityVector: return "InvalidProbabilityVector";
    case ErrorCode::kNegativeLossAversion: return "NegativeLossAversion";
    case ErrorCode::kNonPositiveCost: return "NonPositiveCost";
    case ErrorCode::kPrecisionOutOfRange: return "PrecisionOutOfRange";
    case ErrorCode::kInvalidRange: return "InvalidRange";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kInvalidProfile: return "InvalidProfile";
    case ErrorCode::kOffPathMessage: return "OffPathMessage";
    case ErrorCode::kOnPathMessage: return "OnPathMessage";
    case ErrorCode::kSupportTooLarge: return "SupportTooLarge";
    case ErrorCode::kNotTwoType: return "NotTwoType";
    case ErrorCode::kAccurateInput: return "AccurateInput";
    case ErrorCode::kStepTooLarge: return "StepTooLarge";
    case ErrorCode::kConditionNotMet: return "ConditionNotMet";
    case ErrorCode::kZeroSwitchPoint: return "ZeroSwitchPoint";
    case ErrorCode::kEmptyGrid: return "EmptyGrid";
    case ErrorCode::kUnbalancedRounds: return "UnbalancedRounds";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(ErrorName(code)) + ": " + detail),
      code_(code) {}

}  // namespace certmarket
