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


#include "pnmt/augment.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

#include "pnmt/rng.h"

namespace pnmt {

double NoiseResult::Coverage() const {
  return total_tokens == 0 ? 1.0
                           : static_cast<double>(covered_tokens) /
                                 static_cast<double>(total_tokens);
}

double NoiseResult::ReplacementRate() const {
  return total_tokens == 0 ? 0.0
                           : static_cast<double>(replaced_tokens) /
                                 static_cast<double>(total_tokens);
}

std::vector<std::pair<int, double>> NearestNeighbors(const EmbeddingTable& table,
                                                     int row, int top_n) {
  const Eigen::MatrixXd& v = table.vectors();
  const Eigen::VectorXd norms = v.rowwise().norm();
  const double own = norms[row];
  std::vector<std::pair<int, double>> scored;
  scored.reserve(table.size());
  for (Eigen::Index j = 0; j < v.rows(); ++j) {
    if (j == row) continue;
    const double denom = own * norms[j];
    const double sim = denom > 0.0 ? v.row(row).dot(v.row(j)) / denom : 0.0;
    scored.emplace_back(static_cast<int>(j), sim);
  }
  const size_t keep = std::min(scored.size(), static_cast<size_t>(std::max(top_n, 0)));
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep),
                    scored.end(), [](const auto& a, const auto& b) {
                      return a.second > b.second || (a.second == b.second && a.first < b.first);
                    });
  scored.resize(keep);
  return scored;
}

NoiseResult NoiseAugment(const Corpus& corpus, const EmbeddingTable& table,
                         const NoiseSpec& spec, Diagnostics* diag) {
  if (table.size() == 0) throw Error(ErrorCode::kEmptyEmbedding, "embedding table is empty");
  if (!(spec.fraction > 0.0 && spec.fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidFraction, "noise fraction must be in (0, 1]");
  }
  if (spec.top_n < 1) throw Error(ErrorCode::kInvalidArgument, "top_n must be >= 1");

  // Neighbour lists, computed once per distinct corpus token.
  std::unordered_map<std::string, std::vector<std::pair<int, double>>> neighbors;
  NoiseResult result;
  for (const Sentence& s : corpus) {
    for (const std::string& w : s) {
      ++result.total_tokens;
      const int row = table.IndexOf(w);
      if (row < 0) continue;
      ++result.covered_tokens;
      if (!neighbors.contains(w)) neighbors.emplace(w, NearestNeighbors(table, row, spec.top_n));
    }
  }
  if (result.Coverage() < 0.9) {
    WarnIf(diag, "embedding covers only " +
                     std::to_string(100.0 * result.Coverage()) + "% of tokens");
  }

  result.corpus.reserve(corpus.size());
  std::vector<size_t> positions;
  std::vector<double> weights;
  for (size_t s = 0; s < corpus.size(); ++s) {
    Sentence out = corpus[s];
    Rng rng(DeriveSeed(spec.seed, s));
    const double target = spec.fraction * static_cast<double>(out.size());
    size_t count;
    if (spec.rounding == NoiseRounding::kCeil) {
      count = static_cast<size_t>(std::ceil(target - 1e-12));
    } else {
      const double whole = std::floor(target);
      count = static_cast<size_t>(whole) + (rng.Bernoulli(target - whole) ? 1 : 0);
    }
    count = std::min(count, out.size());
    positions.resize(out.size());
    std::iota(positions.begin(), positions.end(), 0);
    // Partial Fisher-Yates: the first `count` positions are the sample.
    for (size_t i = 0; i < count; ++i) {
      std::swap(positions[i], positions[i + rng.UniformInt(positions.size() - i)]);
    }
    std::sort(positions.begin(), positions.begin() + static_cast<std::ptrdiff_t>(count));
    result.sampled_positions += count;
    for (size_t i = 0; i < count; ++i) {
      std::string& word = out[positions[i]];
      auto it = neighbors.find(word);
      if (it == neighbors.end() || it->second.empty()) continue;
      weights.clear();
      double total = 0.0;
      for (const auto& [row, sim] : it->second) {
        weights.push_back(std::max(sim, 0.0));
        total += weights.back();
      }
      if (!(total > 0.0)) continue;
      double u = rng.UniformDouble() * total;
      size_t pick = 0;
      while (pick + 1 < weights.size() && u >= weights[pick]) u -= weights[pick++];
      while (weights[pick] == 0.0) --pick;  // never lands on a zero weight
      word = table.units()[static_cast<size_t>(it->second[pick].first)];
      ++result.replaced_tokens;
    }
    result.corpus.push_back(std::move(out));
  }
  return result;
}

namespace {

void ValidateWeights(const std::array<double, 3>& w) {
  double sum = 0.0;
  for (double x : w) {
    if (!(x >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "negative op weight");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "op weights must sum to 1");
  }
}

EditOp DrawOp(Rng& rng, const std::array<double, 3>& w) {
  const double u = rng.UniformDouble();
  double acc = 0.0;
  int last = 0;
  for (int i = 0; i < 3; ++i) {
    if (w[i] <= 0.0) continue;
    acc += w[i];
    last = i;
    if (u < acc) return static_cast<EditOp>(i);
  }
  return static_cast<EditOp>(last);
}

}  // namespace

PerturbResult PerturbEdit(const Sentence& sentence, const std::vector<std::string>& vocab,
                          const PerturbationSpec& spec) {
  if (spec.k < 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 0");
  ValidateWeights(spec.op_weights);
  PerturbResult result{sentence, {}, false};
  if (spec.k == 0) return result;
  if (vocab.empty()) throw Error(ErrorCode::kInvalidArgument, "perturbation vocabulary is empty");
  Rng rng(spec.seed);
  Sentence& t = result.tokens;
  for (int step = 0; step < spec.k; ++step) {
    EditOp op = DrawOp(rng, spec.op_weights);
    if (t.empty() && step > 0) result.exhausted = true;
    if (t.empty() || result.exhausted) op = EditOp::kInsertion;
    switch (op) {
      case EditOp::kDeletion:
        t.erase(t.begin() + static_cast<std::ptrdiff_t>(rng.UniformInt(t.size())));
        break;
      case EditOp::kSubstitution: {
        const size_t pos = rng.UniformInt(t.size());
        t[pos] = vocab[rng.UniformInt(vocab.size())];
        break;
      }
      case EditOp::kInsertion: {
        const size_t pos = rng.UniformInt(t.size() + 1);
        t.insert(t.begin() + static_cast<std::ptrdiff_t>(pos), vocab[rng.UniformInt(vocab.size())]);
        break;
      }
    }
    result.applied.push_back(op);
  }
  return result;
}

PerturbCorpusResult PerturbCorpus(const Corpus& corpus,
                                  const std::vector<std::string>& vocab,
                                  const PerturbationSpec& spec) {
  PerturbCorpusResult out;
  out.corpus.reserve(corpus.size());
  for (size_t s = 0; s < corpus.size(); ++s) {
    PerturbationSpec local = spec;
    local.seed = DeriveSeed(spec.seed, s);
    PerturbResult r = PerturbEdit(corpus[s], vocab, local);
    if (r.exhausted) ++out.exhausted_sentences;
    for (EditOp op : r.applied) ++out.op_counts[static_cast<size_t>(op)];
    out.corpus.push_back(std::move(r.tokens));
  }
  return out;
}

size_t EditDistance(const Sentence& a, const Sentence& b) {
  std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      const size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::vector<std::string> CorpusVocabulary(const Corpus& corpus) {
  std::set<std::string> seen;
  for (const Sentence& s : corpus) seen.insert(s.begin(), s.end());
  return {seen.begin(), seen.end()};
}

std::string_view EditOpName(EditOp op) {
  switch (op) {
    case EditOp::kDeletion: return "deletion";
    case EditOp::kSubstitution: return "substitution";
    case EditOp::kInsertion: return "insertion";
  }
  return "unknown";
}

}  // namespace pnmt
