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

#include "cyclip/error.h"

namespace cyclip {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kZeroNorm: return "ZeroNorm";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kEmptyRow: return "EmptyRow";
    case ErrorCode::kNonFiniteEvaluation: return "NonFiniteEvaluation";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kBadArchitecture: return "BadArchitecture";
    case ErrorCode::kTapeMismatch: return "TapeMismatch";
    case ErrorCode::kBatchMismatch: return "BatchMismatch";
    case ErrorCode::kDegenerateBatch: return "DegenerateBatch";
    case ErrorCode::kEmptyTrainSet: return "EmptyTrainSet";
    case ErrorCode::kBadK: return "BadK";
    case ErrorCode::kHierarchyViolation: return "HierarchyViolation";
    case ErrorCode::kEmptySplit: return "EmptySplit";
    case ErrorCode::kBadConfig: return "BadConfig";
    case ErrorCode::kBadClass: return "BadClass";
    case ErrorCode::kTooManyTemplates: return "TooManyTemplates";
    case ErrorCode::kBadStep: return "BadStep";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kUnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::kTruncatedFile: return "TruncatedFile";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kNotUnitNorm: return "NotUnitNorm";
    case ErrorCode::kTrailingData: return "TrailingData";
  }
  return "Unknown";
}

}  // namespace cyclip
