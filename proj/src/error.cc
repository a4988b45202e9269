// Copyright 2026 The pnmt Authors.
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

#include "pnmt/error.h"

namespace pnmt {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kNonAlphabeticToken: return "NonAlphabeticToken";
    case ErrorCode::kMalformedTableLine: return "MalformedTableLine";
    case ErrorCode::kEmptyTable: return "EmptyTable";
    case ErrorCode::kEmptyUnitList: return "EmptyUnitList";
    case ErrorCode::kSizeMismatch: return "SizeMismatch";
    case ErrorCode::kInvalidFraction: return "InvalidFraction";
    case ErrorCode::kTooFewPoints: return "TooFewPoints";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kDanglingContinuation: return "DanglingContinuation";
    case ErrorCode::kMalformedMergeFile: return "MalformedMergeFile";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kMalformedFloat: return "MalformedFloat";
    case ErrorCode::kDegenerateData: return "DegenerateData";
    case ErrorCode::kAllPointsRemoved: return "AllPointsRemoved";
    case ErrorCode::kZeroDispersion: return "ZeroDispersion";
    case ErrorCode::kInsufficientGroups: return "InsufficientGroups";
    case ErrorCode::kEmptyEmbedding: return "EmptyEmbedding";
    case ErrorCode::kLineCountMismatch: return "LineCountMismatch";
    case ErrorCode::kSeparatorCollision: return "SeparatorCollision";
    case ErrorCode::kStageFailed: return "StageFailed";
  }
  return "Unknown";
}

}  // namespace pnmt
