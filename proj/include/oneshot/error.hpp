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

#ifndef ONESHOT_ERROR_HPP_
#define ONESHOT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace oneshot {

enum class ErrorCode {
  kNonHermitian,
  kNumericalFailure,
  kDomainError,
  kDimMismatch,
  kNotPSD,
  kShapeMismatch,
  kEmptyKeepSet,
  kCompletenessViolation,
  kParseError,
  kValidationError,
  kAllZero,
  kNotNormalized,
  kEpsOutOfRange,
  kSupportFailure,
  kSpectrumOutOfRange,
  kZeroTrace,
  kOrderOutOfRange,
  kAlphaOutOfRange,
  kSupportViolation,
  kPOutOfRange,
  kBadM,
  kGridEmpty,
  kDeltaOutOfRange,
  kNonProductPrior,
  kPartialPrecoder,
  kMarginalConstraintViolated,
  kEnumerationTooLarge,
  kDimensionTooLarge,
  kUsage,
};

std::string_view error_code_name(ErrorCode code);

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const noexcept { return code_; }
  // what() without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace oneshot

#endif  // ONESHOT_ERROR_HPP_
