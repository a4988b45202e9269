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


// Robustness data: embedding-similarity word substitution for training
// corpora and random edit operations for test sentences.

#ifndef PNMT_AUGMENT_H_
#define PNMT_AUGMENT_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pnmt/error.h"
#include "pnmt/geometry.h"
#include "pnmt/text.h"

namespace pnmt {

// How fraction * len becomes an integer count of positions per sentence.
enum class NoiseRounding {
  kStochastic,  // floor, plus one with probability equal to the remainder
  kCeil,
};

struct NoiseSpec {
  double fraction = 0.2;
  int top_n = 10;
  uint64_t seed = 0;
  NoiseRounding rounding = NoiseRounding::kStochastic;
};

struct NoiseResult {
  Corpus corpus;
  size_t total_tokens = 0;
  size_t covered_tokens = 0;   // tokens with a vector
  size_t sampled_positions = 0;
  size_t replaced_tokens = 0;

  double Coverage() const;
  double ReplacementRate() const;  // replaced / total
};

// Sentence s uses the RNG substream DeriveSeed(seed, s). Warns when fewer
// than 90% of the tokens have a vector.
NoiseResult NoiseAugment(const Corpus& corpus, const EmbeddingTable& table,
                         const NoiseSpec& spec, Diagnostics* diag = nullptr);

// The top_n cosine-nearest units to `unit` (itself excluded), best first,
// with their similarities. Ties go to the lower row index.
std::vector<std::pair<int, double>> NearestNeighbors(const EmbeddingTable& table,
                                                     int row, int top_n);

enum class EditOp { kDeletion = 0, kSubstitution = 1, kInsertion = 2 };

struct PerturbationSpec {
  int k = 0;
  uint64_t seed = 0;
  // Deletion, substitution, insertion.
  std::array<double, 3> op_weights = {1.0 / 3, 1.0 / 3, 1.0 / 3};
};

struct PerturbResult {
  Sentence tokens;
  std::vector<EditOp> applied;
  // Deletions emptied the sentence before all k operations ran; the
  // remaining operations became insertions.
  bool exhausted = false;
};

// Applies exactly k operations in sequence. Positions, operation types and
// replacement or inserted words are drawn uniformly (types by op_weights).
PerturbResult PerturbEdit(const Sentence& sentence, const std::vector<std::string>& vocab,
                          const PerturbationSpec& spec);

struct PerturbCorpusResult {
  Corpus corpus;
  size_t exhausted_sentences = 0;
  std::array<size_t, 3> op_counts = {0, 0, 0};
};

// Sentence s uses PerturbEdit with seed DeriveSeed(spec.seed, s).
PerturbCorpusResult PerturbCorpus(const Corpus& corpus,
                                  const std::vector<std::string>& vocab,
                                  const PerturbationSpec& spec);

// Word-level Levenshtein distance with unit costs.
size_t EditDistance(const Sentence& a, const Sentence& b);

// Sorted distinct tokens.
std::vector<std::string> CorpusVocabulary(const Corpus& corpus);

std::string_view EditOpName(EditOp op);

}  // namespace pnmt

#endif  // PNMT_AUGMENT_H_
