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


#include "pnmt/evaluate.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <unordered_set>

#include "pnmt/error.h"

namespace pnmt {

namespace {

using NgramCounts = std::map<std::vector<std::string_view>, size_t>;

NgramCounts CountNgrams(const Sentence& s, size_t n) {
  NgramCounts counts;
  if (s.size() < n) return counts;
  for (size_t i = 0; i + n <= s.size(); ++i) {
    std::vector<std::string_view> key(s.begin() + static_cast<std::ptrdiff_t>(i),
                                      s.begin() + static_cast<std::ptrdiff_t>(i + n));
    ++counts[key];
  }
  return counts;
}

}  // namespace

std::string BleuReport::ToLine() const {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "BLEU = %.2f, %.1f/%.1f/%.1f/%.1f (BP=%.3f, ratio=%.3f, hyp_len=%zu, ref_len=%zu)",
                bleu, 100.0 * precisions[0], 100.0 * precisions[1],
                100.0 * precisions[2], 100.0 * precisions[3], brevity_penalty, ratio,
                hyp_length, ref_length);
  return buf;
}

BleuReport Bleu(const Corpus& hypotheses, const std::vector<Corpus>& references,
                BleuOptions options) {
  if (references.empty()) throw Error(ErrorCode::kInvalidArgument, "no reference corpus");
  for (const Corpus& ref : references) {
    if (ref.size() != hypotheses.size()) {
      throw Error(ErrorCode::kLineCountMismatch,
                  "hypotheses have " + std::to_string(hypotheses.size()) +
                      " lines, reference has " + std::to_string(ref.size()));
    }
  }
  BleuReport r;
  for (size_t line = 0; line < hypotheses.size(); ++line) {
    const Sentence& hyp = hypotheses[line];
    r.hyp_length += hyp.size();
    size_t closest = references[0][line].size();
    for (const Corpus& ref : references) {
      const size_t len = ref[line].size();
      const auto diff = [&](size_t l) {
        return l > hyp.size() ? l - hyp.size() : hyp.size() - l;
      };
      if (diff(len) < diff(closest) || (diff(len) == diff(closest) && len < closest)) {
        closest = len;
      }
    }
    r.ref_length += closest;
    for (size_t n = 1; n <= 4; ++n) {
      const NgramCounts hyp_counts = CountNgrams(hyp, n);
      NgramCounts max_ref;
      for (const Corpus& ref : references) {
        for (const auto& [gram, c] : CountNgrams(ref[line], n)) {
          size_t& slot = max_ref[gram];
          slot = std::max(slot, c);
        }
      }
      for (const auto& [gram, c] : hyp_counts) {
        r.totals[n - 1] += c;
        auto it = max_ref.find(gram);
        if (it != max_ref.end()) r.matches[n - 1] += std::min(c, it->second);
      }
    }
  }
  // Orders for which the hypothesis has no n-grams at all have an undefined
  // precision and are left out of the geometric mean.
  double log_sum = 0.0;
  int orders = 0;
  bool zero = false;
  for (size_t n = 0; n < 4; ++n) {
    double m = static_cast<double>(r.matches[n]);
    double t = static_cast<double>(r.totals[n]);
    r.precisions[n] = t > 0.0 ? m / t : 0.0;
    if (t <= 0.0) continue;
    if (options.smooth && n > 0) {
      m += 1.0;
      t += 1.0;
    }
    ++orders;
    if (m <= 0.0) {
      zero = true;
    } else {
      log_sum += std::log(m / t);
    }
  }
  r.ratio = r.ref_length > 0 ? static_cast<double>(r.hyp_length) / static_cast<double>(r.ref_length)
                             : 0.0;
  if (r.hyp_length == 0) {
    r.brevity_penalty = 0.0;
  } else if (r.hyp_length < r.ref_length) {
    r.brevity_penalty = std::exp(1.0 - static_cast<double>(r.ref_length) /
                                           static_cast<double>(r.hyp_length));
  } else {
    r.brevity_penalty = 1.0;
  }
  r.bleu = (zero || orders == 0) ? 0.0
                                 : 100.0 * r.brevity_penalty * std::exp(log_sum / orders);
  return r;
}

BleuReport Bleu(const Corpus& hypotheses, const Corpus& reference, BleuOptions options) {
  return Bleu(hypotheses, std::vector<Corpus>{reference}, options);
}

VocabReport VocabStats(const Corpus& corpus) { return VocabStatsUnion({&corpus}); }

VocabReport VocabStatsUnion(const std::vector<const Corpus*>& streams,
                            const std::vector<std::string>& exclude) {
  const std::unordered_set<std::string_view> skip(exclude.begin(), exclude.end());
  std::unordered_set<std::string_view> seen;
  VocabReport r;
  for (const Corpus* c : streams) {
    for (const Sentence& s : *c) {
      for (const std::string& w : s) {
        if (skip.contains(w)) continue;
        ++r.total;
        seen.insert(w);
      }
    }
  }
  r.unique = seen.size();
  return r;
}

}  // namespace pnmt
