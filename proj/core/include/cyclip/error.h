// Copyright 2026 The cyclip Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CYCLIP_ERROR_H_
#define CYCLIP_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclip {

enum class ErrorCode {
  kZeroNorm,
  kDimMismatch,
  kEmptyRow,
  kNonFiniteEvaluation,
  kNonFiniteValue,
  kBadArchitecture,
  kTapeMismatch,
  kBatchMismatch,
  kDegenerateBatch,
  kEmptyTrainSet,
  kBadK,
  kHierarchyViolation,
  kEmptySplit,
  kBadConfig,
  kBadClass,
  kTooManyTemplates,
  kBadStep,
  kShapeMismatch,
  kNonFiniteLoss,
  kIoError,
  kBadMagic,
  kUnsupportedVersion,
  kTruncatedFile,
  kParseError,
  kNotUnitNorm,
  kTrailingData,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure in the library surfaces as this exception; callers switch
// on code() rather than on message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cyclip

#endif  // CYCLIP_ERROR_H_
