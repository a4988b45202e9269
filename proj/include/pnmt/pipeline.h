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


// End-to-end corpus preparation: encode the source side, learn and apply
// BPE per stream, and emit concatenated or multi-source inputs for an
// external translation system, together with models, reports and a
// manifest of SHA-256 digests.

#ifndef PNMT_PIPELINE_H_
#define PNMT_PIPELINE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pnmt/codecs.h"
#include "pnmt/error.h"
#include "pnmt/text.h"

namespace pnmt {

inline constexpr std::string_view kDefaultSeparator = "<sep>";
inline constexpr std::string_view kVersion = "0.1.0";

enum class CombineMode { kCodesOnly, kConcat, kMultiSource };

std::optional<CombineMode> ParseCombineMode(std::string_view name);
std::string_view CombineModeName(CombineMode mode);

struct PipelineConfig {
  std::string train;  // source-side training corpus
  std::string dev;    // optional
  std::string test;   // optional

  // soundex, nysiis, metaphone, pinyin, wubi, pinyin-letters, wubi-letters,
  // random-cluster (sizes copied from `cluster_baseline`) or random-uniform
  // (round(cluster_fraction * vocabulary) equal-size clusters).
  std::string encoder = "soundex";
  std::string table;  // code table for the table encoders
  bool nysiis_truncate = false;
  std::string cluster_baseline = "metaphone";
  double cluster_fraction = 0.1;

  // Merge operations per stream; a negative value skips BPE for the stream.
  int word_bpe_ops = 10000;
  int code_bpe_ops = 10000;
  std::string continuation = "@@";

  CombineMode combine = CombineMode::kConcat;
  std::string separator{kDefaultSeparator};
  uint64_t seed = 0;

  std::string output_dir;  // not part of the echoed configuration
};

// Flat JSON object whose keys match the command-line flag names.
std::string PipelineConfigToJson(const PipelineConfig& config);
PipelineConfig PipelineConfigFromJson(std::string_view json);

struct EncodedCorpus {
  Corpus words;
  Corpus codes;
  bool token_aligned = true;  // per-line token counts equal
  size_t passed_through = 0;  // tokens kept in surface form
};

// Codec failures on a token become pass-throughs; the count is reported
// and a warning recorded.
EncodedCorpus EncodeCorpus(const Corpus& corpus, const Encoder& encoder,
                           Diagnostics* diag = nullptr);

// Line i: words[i] + separator + codes[i]. The separator is emitted even
// when the code line is empty. Throws kSeparatorCollision if either stream
// already contains the separator.
Corpus ConcatStreams(const Corpus& words, const Corpus& codes,
                     std::string_view separator);

// Throws kSeparatorCollision naming the stream and line.
void CheckSeparator(const Corpus& stream, std::string_view stream_name,
                    std::string_view separator);

// Builds the encoder named in the config; random clusterings are fitted on
// the vocabulary of `train_words`.
std::unique_ptr<Encoder> BuildPipelineEncoder(const PipelineConfig& config,
                                              const Corpus& train_words);

struct PipelineResult {
  std::string output_dir;
  std::map<std::string, std::string> file_digests;  // relative path -> sha256
  std::string manifest_json;
};

// Writes inputs/, models/, streams/, reports/ and manifest.json under
// config.output_dir. Dev and test sets are encoded with the models learned
// on the training set. Stage failures are rethrown as kStageFailed naming
// the stage.
PipelineResult RunPipeline(const PipelineConfig& config, Diagnostics* diag = nullptr);

std::string Sha256Hex(std::string_view bytes);
std::string Sha256File(const std::string& path);

// Digest of the sorted (relative path, file digest) list of a directory.
std::string DirectoryDigest(const std::string& dir);

}  // namespace pnmt

#endif  // PNMT_PIPELINE_H_
