// Copyright 2026 The oneshot Authors
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

#include "oneshot/error.hpp"

namespace oneshot {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonHermitian: return "NonHermitian";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kNotPSD: return "NotPSD";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kEmptyKeepSet: return "EmptyKeepSet";
    case ErrorCode::kCompletenessViolation: return "CompletenessViolation";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kAllZero: return "AllZero";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kEpsOutOfRange: return "EpsOutOfRange";
    case ErrorCode::kSupportFailure: return "SupportFailure";
    case ErrorCode::kSpectrumOutOfRange: return "SpectrumOutOfRange";
    case ErrorCode::kZeroTrace: return "ZeroTrace";
    case ErrorCode::kOrderOutOfRange: return "OrderOutOfRange";
    case ErrorCode::kAlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::kSupportViolation: return "SupportViolation";
    case ErrorCode::kPOutOfRange: return "POutOfRange";
    case ErrorCode::kBadM: return "BadM";
    case ErrorCode::kGridEmpty: return "GridEmpty";
    case ErrorCode::kDeltaOutOfRange: return "DeltaOutOfRange";
    case ErrorCode::kNonProductPrior: return "NonProductPrior";
    case ErrorCode::kPartialPrecoder: return "PartialPrecoder";
    case ErrorCode::kMarginalConstraintViolated: return "MarginalConstraintViolated";
    case ErrorCode::kEnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::kDimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::kUsage: return "Usage";
  }
  return "Unknown";
}

}  // namespace oneshot
