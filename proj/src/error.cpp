/*
 * Copyright 2026 The norml Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "norml/error.hpp"

namespace norml {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotPrime: return "NotPrime";
    case ErrorCode::kDegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::kNotADivisor: return "NotADivisor";
    case ErrorCode::kNotInSubfield: return "NotInSubfield";
    case ErrorCode::kZeroNorm: return "ZeroNorm";
    case ErrorCode::kFieldMismatch: return "FieldMismatch";
    case ErrorCode::kDomainViolation: return "DomainViolation";
    case ErrorCode::kZeroArgument: return "ZeroArgument";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kInsufficientTerms: return "InsufficientTerms";
    case ErrorCode::kNonIntegerMultiplicity: return "NonIntegerMultiplicity";
    case ErrorCode::kSplittingFieldTooLarge: return "SplittingFieldTooLarge";
    case ErrorCode::kTwistNotIntegral: return "TwistNotIntegral";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace norml
