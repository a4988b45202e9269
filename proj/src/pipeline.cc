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


#include "pnmt/pipeline.h"

#include <openssl/evp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pnmt/clustering.h"
#include "pnmt/evaluate.h"
#include "pnmt/subword.h"

namespace pnmt {

namespace fs = std::filesystem;
using nlohmann::json;

std::optional<CombineMode> ParseCombineMode(std::string_view name) {
  if (name == "codes_only") return CombineMode::kCodesOnly;
  if (name == "concat") return CombineMode::kConcat;
  if (name == "multi_source") return CombineMode::kMultiSource;
  return std::nullopt;
}

std::string_view CombineModeName(CombineMode mode) {
  switch (mode) {
    case CombineMode::kCodesOnly: return "codes_only";
    case CombineMode::kConcat: return "concat";
    case CombineMode::kMultiSource: return "multi_source";
  }
  return "unknown";
}

namespace {

json ConfigJson(const PipelineConfig& c) {
  return json{{"train", c.train},
              {"dev", c.dev},
              {"test", c.test},
              {"encoder", c.encoder},
              {"table", c.table},
              {"nysiis-truncate", c.nysiis_truncate},
              {"cluster-baseline", c.cluster_baseline},
              {"cluster-fraction", c.cluster_fraction},
              {"word-bpe-ops", c.word_bpe_ops},
              {"code-bpe-ops", c.code_bpe_ops},
              {"continuation", c.continuation},
              {"combine", std::string(CombineModeName(c.combine))},
              {"separator", c.separator},
              {"seed", c.seed}};
}

}  // namespace

std::string PipelineConfigToJson(const PipelineConfig& config) {
  return ConfigJson(config).dump(2);
}

PipelineConfig PipelineConfigFromJson(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad pipeline config: ") + e.what());
  }
  if (j.contains("config") && j["config"].is_object()) j = j["config"];
  PipelineConfig c;
  try {
    const auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) j.at(key).get_to(field);
    };
    get("train", c.train);
    get("dev", c.dev);
    get("test", c.test);
    get("encoder", c.encoder);
    get("table", c.table);
    get("nysiis-truncate", c.nysiis_truncate);
    get("cluster-baseline", c.cluster_baseline);
    get("cluster-fraction", c.cluster_fraction);
    get("word-bpe-ops", c.word_bpe_ops);
    get("code-bpe-ops", c.code_bpe_ops);
    get("continuation", c.continuation);
    get("separator", c.separator);
    get("seed", c.seed);
    if (j.contains("combine")) {
      const auto mode = ParseCombineMode(j.at("combine").get<std::string>());
      if (!mode) throw Error(ErrorCode::kInvalidArgument, "unknown combine mode");
      c.combine = *mode;
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad pipeline config: ") + e.what());
  }
  return c;
}

EncodedCorpus EncodeCorpus(const Corpus& corpus, const Encoder& encoder,
                           Diagnostics* diag) {
  EncodedCorpus out;
  out.words = corpus;
  out.codes.reserve(corpus.size());
  for (const Sentence& s : corpus) {
    Sentence codes;
    codes.reserve(s.size());
    for (const std::string& w : s) {
      bool passed = false;
      for (std::string& c : encoder.EncodeOrPassThrough(w, &passed)) codes.push_back(std::move(c));
      if (passed) ++out.passed_through;
    }
    if (codes.size() != s.size()) out.token_aligned = false;
    out.codes.push_back(std::move(codes));
  }
  if (out.passed_through > 0) {
    WarnIf(diag, std::to_string(out.passed_through) +
                     " tokens without alphabetic content passed through unencoded");
  }
  return out;
}

void CheckSeparator(const Corpus& stream, std::string_view stream_name,
                    std::string_view separator) {
  for (size_t i = 0; i < stream.size(); ++i) {
    if (std::find(stream[i].begin(), stream[i].end(), separator) != stream[i].end()) {
      throw Error(ErrorCode::kSeparatorCollision,
                  "separator '" + std::string(separator) + "' occurs in " +
                      std::string(stream_name) + " line " + std::to_string(i + 1));
    }
  }
}

Corpus ConcatStreams(const Corpus& words, const Corpus& codes,
                     std::string_view separator) {
  if (words.size() != codes.size()) {
    throw Error(ErrorCode::kLineCountMismatch, "word and code streams differ in length");
  }
  CheckSeparator(words, "word stream", separator);
  CheckSeparator(codes, "code stream", separator);
  Corpus out;
  out.reserve(words.size());
  for (size_t i = 0; i < words.size(); ++i) {
    Sentence line = words[i];
    line.emplace_back(separator);
    line.insert(line.end(), codes[i].begin(), codes[i].end());
    out.push_back(std::move(line));
  }
  return out;
}

std::unique_ptr<Encoder> BuildPipelineEncoder(const PipelineConfig& config,
                                              const Corpus& train_words) {
  const std::string& name = config.encoder;
  if (auto codec = ParsePhoneticCodec(name)) {
    return MakePhoneticEncoder(*codec, NysiisOptions{config.nysiis_truncate});
  }
  const bool pinyin = name == "pinyin" || name == "pinyin-letters";
  const bool wubi = name == "wubi" || name == "wubi-letters";
  if (pinyin || wubi) {
    if (config.table.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "encoder " + name + " needs a code table");
    }
    auto table = std::make_shared<const CodeTable>(
        CodeTable::Load(config.table, pinyin ? TableKind::kPinyin : TableKind::kWubi));
    const bool letters = name.ends_with("-letters");
    return MakeTableEncoder(std::move(table),
                            letters ? Granularity::kLetters : Granularity::kPerCharacter);
  }
  if (name == "random-cluster" || name == "random-uniform") {
    std::set<std::string> vocab;
    for (const Sentence& s : train_words) vocab.insert(s.begin(), s.end());
    const std::vector<std::string> units(vocab.begin(), vocab.end());
    if (name == "random-uniform") {
      return std::make_unique<ClusterEncoder>(
          RandomClusterUniform(units, config.cluster_fraction, config.seed));
    }
    const auto baseline = ParsePhoneticCodec(config.cluster_baseline);
    if (!baseline) {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown cluster baseline " + config.cluster_baseline);
    }
    const auto base_encoder = MakePhoneticEncoder(*baseline, NysiisOptions{config.nysiis_truncate});
    return std::make_unique<ClusterEncoder>(
        RandomCluster(units, DeriveSizeDistribution(units, *base_encoder), config.seed));
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown encoder " + name);
}

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kIoError, "SHA-256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

std::string Sha256File(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return Sha256Hex(buf.str());
}

namespace {

std::map<std::string, std::string> DigestTree(const fs::path& root,
                                              const std::string& skip = "") {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    const std::string rel = fs::relative(entry.path(), root).generic_string();
    if (rel == skip) continue;
    out.emplace(rel, Sha256File(entry.path().string()));
  }
  return out;
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << text;
}

template <typename Fn>
auto Stage(const std::string& name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kStageFailed) throw;
    throw Error(ErrorCode::kStageFailed, "stage '" + name + "': " + e.what());
  }
}

json VocabJson(const VocabReport& r) { return json{{"unique", r.unique}, {"total", r.total}}; }

}  // namespace

std::string DirectoryDigest(const std::string& dir) {
  std::string listing;
  for (const auto& [rel, digest] : DigestTree(dir)) listing += rel + "  " + digest + "\n";
  return Sha256Hex(listing);
}

PipelineResult RunPipeline(const PipelineConfig& config, Diagnostics* diag) {
  if (config.output_dir.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "pipeline output directory not set");
  }
  if (config.train.empty()) throw Error(ErrorCode::kInvalidArgument, "no training corpus");
  if (config.separator.empty() ||
      config.separator.find_first_of(" \t\r\n") != std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "separator must be a single non-empty token");
  }
  const fs::path root(config.output_dir);
  for (const char* sub : {"inputs", "models", "streams", "reports"}) {
    fs::create_directories(root / sub);
  }

  struct Split {
    std::string name;
    std::string path;
    Corpus corpus;
    EncodedCorpus encoded;
    Corpus words_bpe;
    Corpus codes_bpe;
  };
  std::vector<Split> splits;
  splits.push_back({"train", config.train, {}, {}, {}, {}});
  if (!config.dev.empty()) splits.push_back({"dev", config.dev, {}, {}, {}, {}});
  if (!config.test.empty()) splits.push_back({"test", config.test, {}, {}, {}, {}});

  Stage("read", [&] {
    for (Split& s : splits) {
      s.corpus = ReadCorpusFile(s.path);
      WriteCorpusFile((root / "inputs" / (s.name + ".src")).string(), s.corpus);
    }
  });
  if (splits.front().corpus.empty()) {
    throw Error(ErrorCode::kStageFailed, "stage 'read': EmptyCorpus: " + config.train);
  }

  const auto encoder = Stage("encode", [&] {
    auto enc = BuildPipelineEncoder(config, splits.front().corpus);
    if (const auto* clusters = dynamic_cast<const ClusterEncoder*>(enc.get())) {
      clusters->model().Save((root / "models" / "clusters.tsv").string());
    }
    return enc;
  });

  json encode_report = json::object();
  Stage("encode", [&] {
    for (Split& s : splits) {
      s.encoded = EncodeCorpus(s.corpus, *encoder, diag);
      if (config.combine != CombineMode::kCodesOnly) {
        CheckSeparator(s.encoded.words, s.name + " word stream", config.separator);
        CheckSeparator(s.encoded.codes, s.name + " code stream", config.separator);
      }
      WriteCorpusFile((root / "streams" / (s.name + ".words")).string(), s.encoded.words);
      WriteCorpusFile((root / "streams" / (s.name + ".codes")).string(), s.encoded.codes);
      encode_report[s.name] = {{"sentences", s.corpus.size()},
                               {"passed_through", s.encoded.passed_through},
                               {"token_aligned", s.encoded.token_aligned}};
    }
  });

  const auto learn = [&](const char* stage, int ops, const Corpus& train,
                         const char* model_name) -> std::optional<BpeModel> {
    if (ops < 0) return std::nullopt;
    return Stage(stage, [&] {
      BpeModel model = BpeLearn(train, ops, config.continuation);
      model.Save((root / "models" / model_name).string());
      return model;
    });
  };
  const bool need_words = config.combine != CombineMode::kCodesOnly;
  std::optional<BpeModel> word_bpe, code_bpe;
  if (need_words) word_bpe = learn("bpe-words", config.word_bpe_ops, splits.front().encoded.words, "words.bpe");
  code_bpe = learn("bpe-codes", config.code_bpe_ops, splits.front().encoded.codes, "codes.bpe");

  Stage("bpe-apply", [&] {
    for (Split& s : splits) {
      if (need_words) {
        s.words_bpe = word_bpe ? BpeApplyCorpus(s.encoded.words, *word_bpe) : s.encoded.words;
      }
      s.codes_bpe = code_bpe ? BpeApplyCorpus(s.encoded.codes, *code_bpe) : s.encoded.codes;
    }
  });

  json outputs = json::object();
  Stage("combine", [&] {
    for (Split& s : splits) {
      const std::string base = "streams/" + s.name;
      switch (config.combine) {
        case CombineMode::kCodesOnly:
          WriteCorpusFile((root / (base + ".codes.bpe")).string(), s.codes_bpe);
          outputs[s.name] = {{"mode", "codes_only"}, {"source", base + ".codes.bpe"}};
          break;
        case CombineMode::kConcat:
          WriteCorpusFile((root / (base + ".concat")).string(),
                          ConcatStreams(s.words_bpe, s.codes_bpe, config.separator));
          outputs[s.name] = {{"mode", "concat"},
                             {"source", base + ".concat"},
                             {"separator", config.separator}};
          break;
        case CombineMode::kMultiSource:
          if (s.words_bpe.size() != s.codes_bpe.size()) {
            throw Error(ErrorCode::kLineCountMismatch, "stream lengths differ");
          }
          CheckSeparator(s.words_bpe, "word stream", config.separator);
          CheckSeparator(s.codes_bpe, "code stream", config.separator);
          WriteCorpusFile((root / (base + ".words.bpe")).string(), s.words_bpe);
          WriteCorpusFile((root / (base + ".codes.bpe")).string(), s.codes_bpe);
          outputs[s.name] = {{"mode", "multi_source"},
                             {"sources", {base + ".words.bpe", base + ".codes.bpe"}},
                             {"lines", s.corpus.size()}};
          break;
      }
    }
  });

  Stage("report", [&] {
    json vocab = json::object();
    for (const Split& s : splits) {
      json entry = {{"words", VocabJson(VocabStats(s.encoded.words))},
                    {"codes", VocabJson(VocabStats(s.encoded.codes))},
                    {"words+codes", VocabJson(VocabStatsUnion({&s.encoded.words, &s.encoded.codes}))}};
      entry["codes.bpe"] = VocabJson(VocabStats(s.codes_bpe));
      if (need_words) {
        entry["words.bpe"] = VocabJson(VocabStats(s.words_bpe));
        entry["words+codes.bpe"] = VocabJson(VocabStatsUnion({&s.words_bpe, &s.codes_bpe}));
      }
      vocab[s.name] = std::move(entry);
    }
    WriteText(root / "reports" / "vocab.json",
              json{{"schema", "pnmt.vocab.v1"}, {"splits", vocab}}.dump(2) + "\n");
    WriteText(root / "reports" / "encode.json",
              json{{"schema", "pnmt.encode.v1"},
                   {"encoder", encoder->Name()},
                   {"splits", encode_report}}
                      .dump(2) + "\n");
  });

  PipelineResult result;
  result.output_dir = config.output_dir;
  result.file_digests = DigestTree(root, "manifest.json");
  json manifest = {{"schema", "pnmt.manifest.v1"},
                   {"version", std::string(kVersion)},
                   {"config", ConfigJson(config)},
                   {"seeds", {{"cluster", config.seed}}},
                   {"outputs", outputs},
                   {"files", result.file_digests}};
  result.manifest_json = manifest.dump(2) + "\n";
  WriteText(root / "manifest.json", result.manifest_json);
  return result;
}

}  // namespace pnmt
