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

#ifndef CERTMARKET_ERROR_HPP_
#define CERTMARKET_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace certmarket {

enum class ErrorCode {
  kNonAscendingSupport,
  kInvalidProbabilityVector,
  kNegativeLossAversion,
  kNonPositiveCost,
  kPrecisionOutOfRange,
  kInvalidRange,
  kIndexOutOfRange,
  kInvalidProfile,
  kOffPathMessage,
  kOnPathMessage,
  kSupportTooLarge,
  kNotTwoType,
  kAccurateInput,
  kStepTooLarge,
  kConditionNotMet,
  kZeroSwitchPoint,
  kEmptyGrid,
  kUnbalancedRounds,
  kInvalidConfig,
  kInvariantViolation,
};

std::string_view ErrorName(ErrorCode code);

// All library failures surface as this exception; code() identifies the
// contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace certmarket

#endif  // CERTMARKET_ERROR_HPP_
