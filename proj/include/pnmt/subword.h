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

// Byte Pair Encoding over whitespace-tokenized streams (words or codes).
//
// Words are split into code points and merges never cross a word boundary.
// Segmented output marks every non-final piece of a word with a continuation
// suffix ("@@" by default), so decoding is a plain concatenation:
//
//   "this is" -> "th@@ is is"  ->  "this is"

#ifndef PNMT_SUBWORD_H_
#define PNMT_SUBWORD_H_

#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pnmt/text.h"

namespace pnmt {

inline constexpr std::string_view kDefaultContinuation = "@@";

class BpeModel {
 public:
  using Merge = std::pair<std::string, std::string>;

  BpeModel() = default;
  BpeModel(std::vector<Merge> merges, int num_operations,
           std::string continuation = std::string(kDefaultContinuation));

  const std::vector<Merge>& merges() const { return merges_; }
  int num_operations() const { return num_operations_; }
  const std::string& continuation() const { return continuation_; }

  // Merge rank (0 = learned first), or -1.
  int Rank(std::string_view left, std::string_view right) const;

  // Segments one word into pieces, without continuation marks.
  std::vector<std::string> SegmentWord(std::string_view word) const;

  // One merge per line ("left right") after a "#version: 0.2" header.
  std::string Serialize() const;
  void Save(const std::string& path) const;
  static BpeModel Parse(std::string_view text,
                        std::string continuation = std::string(kDefaultContinuation));
  static BpeModel Load(const std::string& path,
                       std::string continuation = std::string(kDefaultContinuation));

 private:
  std::vector<Merge> merges_;
  int num_operations_ = 0;
  std::string continuation_{kDefaultContinuation};
  std::map<std::pair<std::string, std::string>, int, std::less<>> ranks_;
};

// Learns up to `num_operations` merges. Each step merges the most frequent
// adjacent pair, ties going to the lexicographically smallest (left, right);
// learning stops early once no pair occurs more than once.
BpeModel BpeLearn(const Corpus& corpus, int num_operations,
                  std::string continuation = std::string(kDefaultContinuation));

Sentence BpeApply(const Sentence& sentence, const BpeModel& model);
Corpus BpeApplyCorpus(const Corpus& corpus, const BpeModel& model);

// Inverse of BpeApply. Throws Error{kDanglingContinuation} if the pieces end
// inside a word.
Sentence BpeDecode(const Sentence& pieces, std::string_view continuation =
                                               kDefaultContinuation);

}  // namespace pnmt

#endif  // PNMT_SUBWORD_H_
