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


// Corpus BLEU (multi-bleu conventions) and vocabulary statistics.

#ifndef PNMT_EVALUATE_H_
#define PNMT_EVALUATE_H_

#include <array>
#include <string>
#include <vector>

#include "pnmt/text.h"

namespace pnmt {

struct BleuOptions {
  // Add-one smoothing of the 2..4-gram precisions, for tiny test sets.
  bool smooth = false;
};

struct BleuReport {
  double bleu = 0.0;                       // percentage in [0, 100]
  std::array<double, 4> precisions{};      // p1..p4 in [0, 1]
  std::array<size_t, 4> matches{};         // clipped n-gram matches
  std::array<size_t, 4> totals{};          // hypothesis n-grams
  double brevity_penalty = 0.0;
  double ratio = 0.0;                      // hyp_length / ref_length
  size_t hyp_length = 0;
  size_t ref_length = 0;

  // "BLEU = 27.34, 60.1/33.2/20.5/13.0 (BP=1.000, ratio=1.012, hyp_len=..., ref_len=...)"
  std::string ToLine() const;
};

// Case-sensitive corpus BLEU-4 on tokenized text. `references` holds one
// corpus per reference set, each line-aligned with `hypotheses`. With
// several references, counts are clipped against the per-n-gram maximum
// and the reference length closest to the hypothesis (shorter on ties) is
// used, as in multi-bleu.
BleuReport Bleu(const Corpus& hypotheses, const std::vector<Corpus>& references,
                BleuOptions options = {});
BleuReport Bleu(const Corpus& hypotheses, const Corpus& reference,
                BleuOptions options = {});

struct VocabReport {
  size_t unique = 0;
  size_t total = 0;
};

VocabReport VocabStats(const Corpus& corpus);

// Statistics over the union of several streams; tokens in `exclude` are
// not counted.
VocabReport VocabStatsUnion(const std::vector<const Corpus*>& streams,
                            const std::vector<std::string>& exclude = {});

}  // namespace pnmt

#endif  // PNMT_EVALUATE_H_
