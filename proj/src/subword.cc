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

#include "pnmt/subword.h"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include "pnmt/error.h"

namespace pnmt {

BpeModel::BpeModel(std::vector<Merge> merges, int num_operations,
                   std::string continuation)
    : merges_(std::move(merges)),
      num_operations_(num_operations),
      continuation_(std::move(continuation)) {
  for (size_t i = 0; i < merges_.size(); ++i) {
    ranks_.emplace(merges_[i], static_cast<int>(i));
  }
}

int BpeModel::Rank(std::string_view left, std::string_view right) const {
  // std::pair<std::string, std::string> has no heterogeneous comparison.
  auto it = ranks_.find(std::make_pair(std::string(left), std::string(right)));
  return it == ranks_.end() ? -1 : it->second;
}

std::vector<std::string> BpeModel::SegmentWord(std::string_view word) const {
  std::vector<std::string> symbols = SplitCodePoints(word);
  while (symbols.size() > 1) {
    int best_rank = -1;
    size_t best_pos = 0;
    for (size_t i = 0; i + 1 < symbols.size(); ++i) {
      const int rank = Rank(symbols[i], symbols[i + 1]);
      if (rank >= 0 && (best_rank < 0 || rank < best_rank)) {
        best_rank = rank;
        best_pos = i;
      }
    }
    if (best_rank < 0) break;
    const Merge& merge = merges_[best_rank];
    std::vector<std::string> merged;
    merged.reserve(symbols.size());
    for (size_t i = 0; i < symbols.size();) {
      if (i >= best_pos && i + 1 < symbols.size() && symbols[i] == merge.first &&
          symbols[i + 1] == merge.second) {
        merged.push_back(symbols[i] + symbols[i + 1]);
        i += 2;
      } else {
        merged.push_back(std::move(symbols[i]));
        ++i;
      }
    }
    symbols = std::move(merged);
  }
  return symbols;
}

std::string BpeModel::Serialize() const {
  std::string out = "#version: 0.2\n";
  for (const auto& [left, right] : merges_) {
    out += left;
    out += ' ';
    out += right;
    out += '\n';
  }
  return out;
}

void BpeModel::Save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << Serialize();
}

BpeModel BpeModel::Parse(std::string_view text, std::string continuation) {
  std::vector<Merge> merges;
  size_t pos = 0;
  size_t line_no = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || (line_no == 1 && line.starts_with("#version"))) continue;
    const size_t space = line.find(' ');
    if (space == std::string_view::npos || space == 0 ||
        space + 1 == line.size() ||
        line.find(' ', space + 1) != std::string_view::npos) {
      throw Error(ErrorCode::kMalformedMergeFile,
                  "line " + std::to_string(line_no) + ": expected 'left right'");
    }
    merges.emplace_back(std::string(line.substr(0, space)),
                        std::string(line.substr(space + 1)));
  }
  const int n = static_cast<int>(merges.size());
  return BpeModel(std::move(merges), n, std::move(continuation));
}

BpeModel BpeModel::Load(const std::string& path, std::string continuation) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str(), std::move(continuation));
}

namespace {

uint64_t PairKey(int left, int right) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(left)) << 32) |
         static_cast<uint32_t>(right);
}
int KeyLeft(uint64_t key) { return static_cast<int>(key >> 32); }
int KeyRight(uint64_t key) { return static_cast<int>(key & 0xffffffffu); }

struct Word {
  std::vector<int> symbols;
  int64_t freq;
};

class PairQueue {
 public:
  explicit PairQueue(const std::vector<std::string>* symbols)
      : order_(Compare{symbols}) {}

  void Set(uint64_t key, int64_t old_count, int64_t new_count) {
    if (old_count > 0) order_.erase({old_count, key});
    if (new_count > 0) order_.insert({new_count, key});
  }

  bool Empty() const { return order_.empty(); }
  std::pair<int64_t, uint64_t> Top() const { return *order_.begin(); }

 private:
  struct Compare {
    const std::vector<std::string>* symbols;
    bool operator()(const std::pair<int64_t, uint64_t>& a,
                    const std::pair<int64_t, uint64_t>& b) const {
      if (a.first != b.first) return a.first > b.first;
      const auto& s = *symbols;
      const int al = KeyLeft(a.second), bl = KeyLeft(b.second);
      if (al != bl) return s[al] < s[bl];
      return s[KeyRight(a.second)] < s[KeyRight(b.second)];
    }
  };
  std::set<std::pair<int64_t, uint64_t>, Compare> order_;
};

}  // namespace

BpeModel BpeLearn(const Corpus& corpus, int num_operations,
                  std::string continuation) {
  if (num_operations < 0) {
    throw Error(ErrorCode::kInvalidArgument, "num_operations must be >= 0");
  }
  std::map<std::string, int64_t> word_counts;
  for (const Sentence& s : corpus) {
    for (const std::string& w : s) ++word_counts[w];
  }
  if (word_counts.empty()) throw Error(ErrorCode::kEmptyCorpus, "no tokens");

  std::vector<std::string> symbols;
  std::unordered_map<std::string, int> symbol_ids;
  auto intern = [&](const std::string& s) {
    auto [it, inserted] = symbol_ids.emplace(s, static_cast<int>(symbols.size()));
    if (inserted) symbols.push_back(s);
    return it->second;
  };

  std::vector<Word> words;
  words.reserve(word_counts.size());
  for (const auto& [w, freq] : word_counts) {
    Word word{{}, freq};
    for (const std::string& cp : SplitCodePoints(w)) word.symbols.push_back(intern(cp));
    words.push_back(std::move(word));
  }

  std::unordered_map<uint64_t, int64_t> counts;
  std::unordered_map<uint64_t, std::vector<int>> where;
  for (size_t wi = 0; wi < words.size(); ++wi) {
    const auto& sym = words[wi].symbols;
    for (size_t i = 0; i + 1 < sym.size(); ++i) {
      const uint64_t key = PairKey(sym[i], sym[i + 1]);
      counts[key] += words[wi].freq;
      where[key].push_back(static_cast<int>(wi));
    }
  }
  PairQueue queue(&symbols);
  for (const auto& [key, c] : counts) queue.Set(key, 0, c);

  std::vector<BpeModel::Merge> merges;
  while (static_cast<int>(merges.size()) < num_operations && !queue.Empty()) {
    const auto [best_count, best_key] = queue.Top();
    if (best_count < 2) break;
    const int left = KeyLeft(best_key), right = KeyRight(best_key);
    merges.emplace_back(symbols[left], symbols[right]);
    const int joined = intern(symbols[left] + symbols[right]);

    std::vector<int> affected = std::move(where[best_key]);
    where.erase(best_key);
    std::sort(affected.begin(), affected.end());
    affected.erase(std::unique(affected.begin(), affected.end()), affected.end());

    std::unordered_map<uint64_t, int64_t> delta;
    for (int wi : affected) {
      Word& word = words[wi];
      auto& sym = word.symbols;
      bool present = false;
      for (size_t i = 0; i + 1 < sym.size(); ++i) {
        if (sym[i] == left && sym[i + 1] == right) {
          present = true;
          break;
        }
      }
      if (!present) continue;
      for (size_t i = 0; i + 1 < sym.size(); ++i) {
        delta[PairKey(sym[i], sym[i + 1])] -= word.freq;
      }
      std::vector<int> merged;
      merged.reserve(sym.size());
      for (size_t i = 0; i < sym.size();) {
        if (i + 1 < sym.size() && sym[i] == left && sym[i + 1] == right) {
          merged.push_back(joined);
          i += 2;
        } else {
          merged.push_back(sym[i]);
          ++i;
        }
      }
      sym = std::move(merged);
      for (size_t i = 0; i + 1 < sym.size(); ++i) {
        const uint64_t key = PairKey(sym[i], sym[i + 1]);
        delta[key] += word.freq;
        where[key].push_back(wi);
      }
    }
    for (const auto& [key, d] : delta) {
      if (d == 0) continue;
      const int64_t old_count = counts[key];
      const int64_t new_count = old_count + d;
      queue.Set(key, old_count, new_count);
      if (new_count > 0) {
        counts[key] = new_count;
      } else {
        counts.erase(key);
      }
    }
  }
  return BpeModel(std::move(merges), num_operations, std::move(continuation));
}

Sentence BpeApply(const Sentence& sentence, const BpeModel& model) {
  Sentence out;
  for (const std::string& word : sentence) {
    std::vector<std::string> pieces = model.SegmentWord(word);
    for (size_t i = 0; i < pieces.size(); ++i) {
      if (i + 1 < pieces.size()) pieces[i] += model.continuation();
      out.push_back(std::move(pieces[i]));
    }
  }
  return out;
}

Corpus BpeApplyCorpus(const Corpus& corpus, const BpeModel& model) {
  std::unordered_map<std::string, std::vector<std::string>> cache;
  Corpus out;
  out.reserve(corpus.size());
  for (const Sentence& sentence : corpus) {
    Sentence segmented;
    for (const std::string& word : sentence) {
      auto it = cache.find(word);
      if (it == cache.end()) {
        std::vector<std::string> pieces = model.SegmentWord(word);
        for (size_t i = 0; i + 1 < pieces.size(); ++i) pieces[i] += model.continuation();
        it = cache.emplace(word, std::move(pieces)).first;
      }
      segmented.insert(segmented.end(), it->second.begin(), it->second.end());
    }
    out.push_back(std::move(segmented));
  }
  return out;
}

Sentence BpeDecode(const Sentence& pieces, std::string_view continuation) {
  Sentence out;
  std::string pending;
  bool open = false;
  for (const std::string& piece : pieces) {
    if (!continuation.empty() && piece.size() > continuation.size() &&
        std::string_view(piece).ends_with(continuation)) {
      pending.append(piece, 0, piece.size() - continuation.size());
      open = true;
    } else {
      pending += piece;
      out.push_back(std::move(pending));
      pending.clear();
      open = false;
    }
  }
  if (open) {
    throw Error(ErrorCode::kDanglingContinuation,
                "pieces end inside a word ('" + pending + "')");
  }
  return out;
}

}  // namespace pnmt
