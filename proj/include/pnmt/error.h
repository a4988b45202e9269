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

#ifndef PNMT_ERROR_H_
#define PNMT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pnmt {

enum class ErrorCode {
  kInvalidArgument,
  kIoError,
  // codecs
  kNonAlphabeticToken,
  kMalformedTableLine,
  kEmptyTable,
  // clustering
  kEmptyUnitList,
  kSizeMismatch,
  kInvalidFraction,
  kTooFewPoints,
  // subword
  kEmptyCorpus,
  kDanglingContinuation,
  kMalformedMergeFile,
  // geometry
  kDimensionMismatch,
  kMalformedFloat,
  kDegenerateData,
  kAllPointsRemoved,
  kZeroDispersion,
  kInsufficientGroups,
  // augment
  kEmptyEmbedding,
  // evaluate
  kLineCountMismatch,
  // pipeline
  kSeparatorCollision,
  kStageFailed,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported as pnmt::Error. The code identifies the
// contract violation; what() carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Collects non-fatal conditions (coverage gaps, reduced ranks, duplicate
// entries). Functions that can warn take an optional pointer to one.
struct Diagnostics {
  std::vector<std::string> warnings;

  void Warn(std::string message) { warnings.push_back(std::move(message)); }
};

inline void WarnIf(Diagnostics* diag, std::string message) {
  if (diag != nullptr) diag->Warn(std::move(message));
}

}  // namespace pnmt

#endif  // PNMT_ERROR_H_
