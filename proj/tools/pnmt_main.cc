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


// pnmt: command-line entry point.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pnmt/augment.h"
#include "pnmt/clustering.h"
#include "pnmt/codecs.h"
#include "pnmt/error.h"
#include "pnmt/evaluate.h"
#include "pnmt/geometry.h"
#include "pnmt/pipeline.h"
#include "pnmt/report.h"
#include "pnmt/subword.h"
#include "pnmt/text.h"

namespace pnmt {
namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string seed;
  std::string config;
  std::string format = "text";
};

Globals g;

uint64_t RequireSeed() {
  if (g.seed.empty()) {
    throw UsageError("this command is randomized; pass --seed N or --seed auto");
  }
  if (g.seed == "auto") {
    std::random_device rd;
    const uint64_t seed = (static_cast<uint64_t>(rd()) << 32) ^ rd();
    g.seed = std::to_string(seed);
    std::cerr << "seed=" << seed << "\n";
    return seed;
  }
  uint64_t seed = 0;
  const char* begin = g.seed.data();
  auto [end, ec] = std::from_chars(begin, begin + g.seed.size(), seed);
  if (ec != std::errc() || end != begin + g.seed.size()) {
    throw UsageError("--seed must be a non-negative integer or 'auto'");
  }
  return seed;
}

ReportFormat Format() {
  if (g.format == "json") return ReportFormat::kJson;
  if (g.format == "csv") return ReportFormat::kCsv;
  return ReportFormat::kText;
}

Corpus ReadInput(const std::string& path) {
  if (path.empty() || path == "-") return ReadCorpus(std::cin);
  return ReadCorpusFile(path);
}

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << text;
}

void WriteCorpusOutput(const std::string& path, const Corpus& corpus) {
  if (path.empty() || path == "-") {
    WriteCorpus(std::cout, corpus);
  } else {
    WriteCorpusFile(path, corpus);
  }
}

void PrintReport(const ReportDoc& doc, const std::string& output = "") {
  WriteOutput(output, doc.Get(Format()));
}

void PrintWarnings(const Diagnostics& diag) {
  for (const std::string& w : diag.warnings) std::cerr << "warning: " << w << "\n";
}

// ---------------------------------------------------------------------------
// Flat config files: `name = value` or `name: value`, '#' comments. Values
// are injected as flags unless the flag is already on the command line.

std::map<std::string, std::string> ReadFlatConfig(const std::string& path) {
  std::map<std::string, std::string> out;
  size_t line_no = 0;
  for (const std::string& raw : ReadLines(path)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    const size_t sep = line.find_first_of("=:");
    const auto trim = [](std::string s) {
      const size_t b = s.find_first_not_of(" \t\"");
      const size_t e = s.find_last_not_of(" \t\"");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (sep == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected 'name = value'");
    }
    std::string key = trim(line.substr(0, sep));
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    out[key] = trim(line.substr(sep + 1));
  }
  return out;
}

std::vector<std::string> InjectConfig(CLI::App& app, std::vector<std::string> args) {
  std::string config_path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }
  if (config_path.empty()) return args;
  std::vector<CLI::App*> chain = {&app};
  for (const std::string& a : args) {
    if (a.starts_with("-")) continue;
    CLI::App* sub = chain.back()->get_subcommand_no_throw(a);
    if (sub != nullptr) chain.push_back(sub);
  }
  std::set<std::string> present;
  for (const std::string& a : args) {
    if (a.starts_with("--")) present.insert(a.substr(2, a.find('=') - 2));
  }
  for (const auto& [key, value] : ReadFlatConfig(config_path)) {
    if (present.contains(key) || key == "config") continue;
    const CLI::Option* opt = nullptr;
    for (auto it = chain.rbegin(); it != chain.rend() && opt == nullptr; ++it) {
      opt = (*it)->get_option_no_throw("--" + key);
    }
    if (opt == nullptr) throw UsageError("config key '" + key + "' is not a flag of this command");
    if (opt->get_expected_max() == 0) {
      if (value == "true" || value == "1" || value == "yes") args.push_back("--" + key);
    } else {
      args.push_back("--" + key);
      args.push_back(value);
    }
  }
  return args;
}

// ---------------------------------------------------------------------------
// Shared geometry inputs


std::map<std::string, Point2> ReadPoints(const std::string& path) {
  std::map<std::string, Point2> out;
  size_t line_no = 0;
  for (const std::string& line : ReadLines(path)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const Sentence f = SplitWhitespace(line);
    if (f.empty()) continue;
    if (f.size() != 3) {
      throw Error(ErrorCode::kDimensionMismatch,
                  path + ":" + std::to_string(line_no) + ": expected 'unit x y'");
    }
    Point2 p;
    for (int k = 0; k < 2; ++k) {
      double& v = k == 0 ? p.x : p.y;
      const std::string& s = f[k + 1];
      auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v)) {
        throw Error(ErrorCode::kMalformedFloat,
                    path + ":" + std::to_string(line_no) + ": bad value '" + s + "'");
      }
    }
    out[f[0]] = p;
  }
  return out;
}

std::map<std::string, std::string> ReadGroups(const std::string& path) {
  std::map<std::string, std::string> out;
  size_t line_no = 0;
  for (const std::string& line : ReadLines(path)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const Sentence f = SplitWhitespace(line);
    if (f.empty()) continue;
    if (f.size() != 2) {
      throw Error(ErrorCode::kInvalidArgument,
                  path + ":" + std::to_string(line_no) + ": expected 'unit<TAB>group'");
    }
    out[f[0]] = f[1];
  }
  return out;
}

struct GroupInputs {
  std::string points;
  std::string groups;
  std::string codec;
  double beta = 0.3;
  double radius = 10.0;
  bool no_smooth = false;

  void Add(CLI::App* app, bool smoothing) {
    app->add_option("--points", points, "Projected points, 'unit x y' per line")->required();
    app->add_option("--groups", groups, "Grouping, 'unit<TAB>group' per line");
    app->add_option("--codec", codec, "Group the units by this phonetic codec instead");
    if (smoothing) {
      app->add_option("--beta", beta, "Outlier threshold (fraction if < 1, count if >= 1)");
      app->add_option("--radius", radius, "Outlier neighbourhood radius");
      app->add_flag("--no-smooth", no_smooth, "Disable outlier removal");
    }
  }

  std::optional<HullParams> Params() const {
    if (no_smooth) return std::nullopt;
    return HullParams{beta, radius};
  }

  std::map<std::string, Point2> Points() const { return ReadPoints(points); }

  GroupedPoints Groups(const std::map<std::string, Point2>& pts) const {
    std::map<std::string, std::string> encoding;
    if (!codec.empty()) {
      const auto c = ParsePhoneticCodec(codec);
      if (!c) throw UsageError("unknown codec " + codec);
      const auto enc = MakePhoneticEncoder(*c);
      for (const auto& [unit, p] : pts) encoding[unit] = enc->UnitKey(unit);
    } else if (!groups.empty()) {
      encoding = ReadGroups(groups);
    } else {
      throw UsageError("pass --groups or --codec");
    }
    GroupedPoints grouped = GroupPoints(pts, encoding);
    if (grouped.missing > 0) {
      std::cerr << "warning: " << grouped.missing << " grouped units have no point\n";
    }
    return grouped;
  }
};

// ---------------------------------------------------------------------------
// Commands

struct EncodeCmd {
  std::string codec = "soundex";
  std::string table;
  bool nysiis_truncate = false;
  std::string input;
  std::string output;

  void Add(CLI::App* app) {
    app->add_option("--codec", codec,
                    "soundex, nysiis, metaphone, pinyin, wubi, pinyin-letters, wubi-letters");
    app->add_option("--table", table, "Code table for pinyin/wubi");
    app->add_flag("--nysiis-truncate", nysiis_truncate, "Truncate NYSIIS codes to 6 letters");
    app->add_option("--input", input, "Input corpus (default stdin)");
    app->add_option("--output", output, "Output corpus (default stdout)");
  }

  int Run() const {
    if (codec.starts_with("random")) throw UsageError("use 'cluster' for random clustering");
    PipelineConfig cfg;
    cfg.encoder = codec;
    cfg.table = table;
    cfg.nysiis_truncate = nysiis_truncate;
    const auto encoder = BuildPipelineEncoder(cfg, {});
    Diagnostics diag;
    const EncodedCorpus enc = EncodeCorpus(ReadInput(input), *encoder, &diag);
    WriteCorpusOutput(output, enc.codes);
    PrintWarnings(diag);
    return kExitOk;
  }
};

struct ClusterCmd {
  std::string method = "random";
  std::string input;
  std::string baseline = "metaphone";
  double fraction = 0.1;
  std::string model;
  std::string output;
  std::string embeddings;
  int k = 0;
  int max_iter = 100;
  std::string centroids;

  void Add(CLI::App* app) {
    app->add_option("--method", method, "random, uniform or kmeans");
    app->add_option("--input", input, "Corpus whose distinct tokens are clustered");
    app->add_option("--baseline", baseline, "Codec whose group sizes are copied");
    app->add_option("--fraction", fraction, "Clusters per unit for --method uniform");
    app->add_option("--model", model, "Cluster model output (unit<TAB>cluster)")->required();
    app->add_option("--output", output, "Also write --input encoded with the clusters");
    app->add_option("--embeddings", embeddings, "Vectors for --method kmeans");
    app->add_option("--k", k, "K for kmeans (default: number of baseline codes)");
    app->add_option("--max-iter", max_iter, "Lloyd iteration cap");
    app->add_option("--centroids", centroids, "K-Means centroid output");
  }

  int Run() const {
    const uint64_t seed = RequireSeed();
    const auto base_codec = ParsePhoneticCodec(baseline);
    if (!base_codec) throw UsageError("unknown baseline codec " + baseline);
    const auto base = MakePhoneticEncoder(*base_codec);
    if (method == "kmeans") {
      if (embeddings.empty()) throw UsageError("--method kmeans needs --embeddings");
      const EmbeddingTable table = LoadEmbeddings(embeddings);
      int clusters = k;
      if (clusters <= 0) {
        clusters = static_cast<int>(DeriveSizeDistribution(table.units(), *base).multiplicities.size());
      }
      const KMeansModel km = KMeansFit(table.vectors(), clusters, seed, {max_iter, true});
      km.SaveAssignment(model, table.units());
      if (!centroids.empty()) km.SaveCentroids(centroids);
      std::cerr << "clusters=" << clusters << " iterations=" << km.iterations
                << " cost=" << FormatDouble(km.Cost()) << "\n";
      return kExitOk;
    }
    if (input.empty()) throw UsageError("--input is required");
    const Corpus corpus = ReadInput(input);
    const std::vector<std::string> units = CorpusVocabulary(corpus);
    ClusterModel cm;
    if (method == "random") {
      cm = RandomCluster(units, DeriveSizeDistribution(units, *base), seed);
    } else if (method == "uniform") {
      cm = RandomClusterUniform(units, fraction, seed);
    } else {
      throw UsageError("unknown method " + method);
    }
    cm.Save(model);
    if (!output.empty()) {
      Corpus encoded;
      for (const Sentence& s : corpus) encoded.push_back(EncodeWithClusters(s, cm));
      WriteCorpusOutput(output, encoded);
    }
    std::cerr << "units=" << units.size() << " clusters=" << cm.num_clusters() << "\n";
    return kExitOk;
  }
};

struct BpeLearnCmd {
  std::string input;
  int operations = 10000;
  std::string output;
  std::string continuation = "@@";

  void Add(CLI::App* app) {
    app->add_option("--input", input, "Training corpus (default stdin)");
    app->add_option("--operations", operations, "Number of merge operations");
    app->add_option("--output", output, "Merge file (default stdout)");
    app->add_option("--continuation", continuation, "Continuation marker");
  }

  int Run() const {
    if (operations < 0) throw UsageError("--operations must be >= 0");
    const BpeModel m = BpeLearn(ReadInput(input), operations, continuation);
    WriteOutput(output, m.Serialize());
    return kExitOk;
  }
};

struct BpeApplyCmd {
  std::string model;
  std::string input;
  std::string output;
  std::string continuation = "@@";
  bool decode = false;

  void Add(CLI::App* app, bool is_decode) {
    decode = is_decode;
    if (!is_decode) app->add_option("--model", model, "Merge file")->required();
    app->add_option("--input", input, "Input corpus (default stdin)");
    app->add_option("--output", output, "Output corpus (default stdout)");
    app->add_option("--continuation", continuation, "Continuation marker");
  }

  int Run() const {
    const Corpus in = ReadInput(input);
    Corpus out;
    if (decode) {
      for (const Sentence& s : in) out.push_back(BpeDecode(s, continuation));
    } else {
      out = BpeApplyCorpus(in, BpeModel::Load(model, continuation));
    }
    WriteCorpusOutput(output, out);
    return kExitOk;
  }
};

struct PipelineCmd {
  PipelineConfig cfg;
  std::string combine = "concat";
  std::string from_manifest;
  CLI::App* app = nullptr;

  void Add(CLI::App* a) {
    app = a;
    a->add_option("--train", cfg.train, "Training source corpus");
    a->add_option("--dev", cfg.dev, "Development source corpus");
    a->add_option("--test", cfg.test, "Test source corpus");
    a->add_option("--encoder", cfg.encoder,
                  "soundex, nysiis, metaphone, pinyin, wubi, pinyin-letters, "
                  "wubi-letters, random-cluster or random-uniform");
    a->add_option("--table", cfg.table, "Code table for pinyin/wubi");
    a->add_flag("--nysiis-truncate", cfg.nysiis_truncate, "Truncate NYSIIS codes");
    a->add_option("--cluster-baseline", cfg.cluster_baseline, "Baseline codec for random-cluster");
    a->add_option("--cluster-fraction", cfg.cluster_fraction, "Cluster fraction for random-uniform");
    a->add_option("--word-bpe-ops", cfg.word_bpe_ops, "BPE merges for words (-1: no BPE)");
    a->add_option("--code-bpe-ops", cfg.code_bpe_ops, "BPE merges for codes (-1: no BPE)");
    a->add_option("--continuation", cfg.continuation, "BPE continuation marker");
    a->add_option("--combine", combine, "codes_only, concat or multi_source");
    a->add_option("--separator", cfg.separator, "Separator token for concat");
    a->add_option("--output-dir", cfg.output_dir, "Artifact directory")->required();
    a->add_option("--from-manifest", from_manifest, "Re-run the configuration of a manifest");
  }

  int Run() {
    PipelineConfig run;
    if (!from_manifest.empty()) {
      std::ifstream in(from_manifest, std::ios::binary);
      if (!in) throw Error(ErrorCode::kIoError, "cannot open " + from_manifest);
      std::stringstream buf;
      buf << in.rdbuf();
      run = PipelineConfigFromJson(buf.str());
    }
    const auto given = [&](const char* name) { return app->count(name) > 0; };
    if (given("--train")) run.train = cfg.train;
    if (given("--dev")) run.dev = cfg.dev;
    if (given("--test")) run.test = cfg.test;
    if (given("--encoder")) run.encoder = cfg.encoder;
    if (given("--table")) run.table = cfg.table;
    if (given("--nysiis-truncate")) run.nysiis_truncate = cfg.nysiis_truncate;
    if (given("--cluster-baseline")) run.cluster_baseline = cfg.cluster_baseline;
    if (given("--cluster-fraction")) run.cluster_fraction = cfg.cluster_fraction;
    if (given("--word-bpe-ops")) run.word_bpe_ops = cfg.word_bpe_ops;
    if (given("--code-bpe-ops")) run.code_bpe_ops = cfg.code_bpe_ops;
    if (given("--continuation")) run.continuation = cfg.continuation;
    if (given("--separator")) run.separator = cfg.separator;
    if (given("--combine")) {
      const auto mode = ParseCombineMode(combine);
      if (!mode) throw UsageError("unknown combine mode " + combine);
      run.combine = *mode;
    }
    run.output_dir = cfg.output_dir;
    if (run.train.empty()) throw UsageError("--train is required");
    if (run.encoder.starts_with("random")) {
      if (!g.seed.empty() || from_manifest.empty()) run.seed = RequireSeed();
    }
    Diagnostics diag;
    const PipelineResult r = RunPipeline(run, &diag);
    PrintWarnings(diag);
    std::cout << "artifacts=" << r.output_dir << " files=" << r.file_digests.size()
              << " digest=" << DirectoryDigest(r.output_dir) << "\n";
    return kExitOk;
  }
};

struct EmbedCmd {
  std::string input;
  EmbeddingOptions opt;
  std::string output;

  void Add(CLI::App* app) {
    app->add_option("--input", input, "Training corpus")->required();
    app->add_option("--dim", opt.dimension, "Embedding dimension");
    app->add_option("--window", opt.window, "Symmetric co-occurrence window");
    app->add_option("--max-vocab", opt.max_vocab, "Keep the most frequent types (0: all)");
    app->add_option("--output", output, "Vector file")->required();
  }

  int Run() {
    opt.seed = RequireSeed();
    Diagnostics diag;
    TrainEmbeddings(ReadInput(input), opt, &diag).Save(output);
    PrintWarnings(diag);
    return kExitOk;
  }
};

struct ProjectCmd {
  std::string embeddings;
  std::string output;

  void Add(CLI::App* app) {
    app->add_option("--embeddings", embeddings, "Vector file")->required();
    app->add_option("--output", output, "Points file (default stdout)");
  }

  int Run() const {
    Diagnostics diag;
    const ProjectedTable p = PcaProject(LoadEmbeddings(embeddings, &diag));
    std::ostringstream out;
    out.precision(17);
    for (const auto& [unit, pt] : p.points) out << unit << '\t' << pt.x << '\t' << pt.y << '\n';
    WriteOutput(output, out.str());
    PrintWarnings(diag);
    std::cerr << "variance=" << FormatDouble(p.variance[0]) << ","
              << FormatDouble(p.variance[1]) << "\n";
    return kExitOk;
  }
};

struct GammaCmd {
  GroupInputs in;

  void Add(CLI::App* app) { in.Add(app, false); }

  int Run() const {
    const auto pts = in.Points();
    PrintReport(GammaDoc(ConcentrationFactor(in.Groups(pts).groups)));
    return kExitOk;
  }
};

std::vector<Point2> AllPoints(const std::map<std::string, Point2>& pts) {
  std::vector<Point2> out;
  for (const auto& [u, p] : pts) out.push_back(p);
  return out;
}

struct DensityCmd {
  GroupInputs in;
  DensityOptions opt;

  void Add(CLI::App* app) {
    in.Add(app, true);
    app->add_option("--neighbors", opt.max_neighbor, "Report D_1 .. D_n");
    app->add_option("--budget", opt.sample_budget, "Maximum number of samples");
    app->add_option("--threshold", opt.threshold, "Convergence threshold");
    app->add_option("--batch", opt.batch_size, "Samples per convergence check");
    app->add_option("--draw", opt.groups_per_draw, "Reference groups drawn");
  }

  int Run() {
    const uint64_t seed = RequireSeed();
    const auto pts = in.Points();
    const GroupedPoints grouped = in.Groups(pts);
    PrintReport(DensityDoc(DensityMeasure(AllPoints(pts), grouped.groups, in.Params(), seed, opt)));
    return kExitOk;
  }
};

struct CdfCmd {
  GroupInputs in;

  void Add(CLI::App* app) { in.Add(app, true); }

  int Run() const {
    const auto pts = in.Points();
    PrintReport(CdfDoc(VolumeCdf(in.Groups(pts).groups, in.Params())));
    return kExitOk;
  }
};

struct CoverageCmd {
  GroupInputs in;

  void Add(CLI::App* app) { in.Add(app, true); }

  int Run() const {
    const uint64_t seed = RequireSeed();
    const auto pts = in.Points();
    PrintReport(CoverageDoc(CoverageCurve(in.Groups(pts).groups, seed, in.Params()), seed));
    return kExitOk;
  }
};

struct NoiseCmd {
  std::string input;
  std::string embeddings;
  NoiseSpec spec;
  std::string rounding = "stochastic";
  std::string output;
  std::string manifest;

  void Add(CLI::App* app) {
    app->add_option("--input", input, "Corpus (default stdin)");
    app->add_option("--embeddings", embeddings, "Vector file")->required();
    app->add_option("--fraction", spec.fraction, "Share of tokens to replace");
    app->add_option("--top-n", spec.top_n, "Candidate neighbours per word");
    app->add_option("--rounding", rounding, "stochastic or ceil");
    app->add_option("--output", output, "Noised corpus (default stdout)");
    app->add_option("--manifest", manifest, "JSON manifest output");
  }

  int Run() {
    spec.seed = RequireSeed();
    if (rounding == "ceil") {
      spec.rounding = NoiseRounding::kCeil;
    } else if (rounding != "stochastic") {
      throw UsageError("unknown rounding " + rounding);
    }
    Diagnostics diag;
    const NoiseResult r = NoiseAugment(ReadInput(input), LoadEmbeddings(embeddings, &diag), spec, &diag);
    WriteCorpusOutput(output, r.corpus);
    PrintWarnings(diag);
    const json m = {{"schema", "pnmt.augment.noise.v1"},
                    {"seed", spec.seed},
                    {"fraction", spec.fraction},
                    {"top_n", spec.top_n},
                    {"rounding", rounding},
                    {"sentences", r.corpus.size()},
                    {"total_tokens", r.total_tokens},
                    {"covered_tokens", r.covered_tokens},
                    {"coverage", r.Coverage()},
                    {"sampled_positions", r.sampled_positions},
                    {"replaced_tokens", r.replaced_tokens},
                    {"replacement_rate", r.ReplacementRate()}};
    if (!manifest.empty()) WriteOutput(manifest, m.dump(2) + "\n");
    std::cerr << "replacement_rate=" << FormatDouble(r.ReplacementRate()) << "\n";
    return kExitOk;
  }
};

struct PerturbCmd {
  std::string input;
  std::string vocab;
  PerturbationSpec spec;
  std::vector<double> weights;
  std::string output;
  std::string manifest;

  void Add(CLI::App* app) {
    app->add_option("--input", input, "Corpus (default stdin)");
    app->add_option("--vocab", vocab, "Replacement vocabulary (default: corpus vocabulary)");
    app->add_option("--k", spec.k, "Edit operations per sentence")->required();
    app->add_option("--weights", weights, "Deletion, substitution, insertion probabilities")
        ->expected(3)
        ->delimiter(',');
    app->add_option("--output", output, "Perturbed corpus (default stdout)");
    app->add_option("--manifest", manifest, "JSON manifest output");
  }

  int Run() {
    spec.seed = RequireSeed();
    if (!weights.empty()) spec.op_weights = {weights[0], weights[1], weights[2]};
    const Corpus corpus = ReadInput(input);
    std::vector<std::string> words =
        vocab.empty() ? CorpusVocabulary(corpus) : CorpusVocabulary(ReadCorpusFile(vocab));
    const PerturbCorpusResult r = PerturbCorpus(corpus, words, spec);
    WriteCorpusOutput(output, r.corpus);
    if (r.exhausted_sentences > 0) {
      std::cerr << "warning: SentenceExhausted in " << r.exhausted_sentences
                << " sentences; remaining operations became insertions\n";
    }
    const json m = {{"schema", "pnmt.augment.perturb.v1"},
                    {"seed", spec.seed},
                    {"k", spec.k},
                    {"op_weights", spec.op_weights},
                    {"sentences", r.corpus.size()},
                    {"op_counts",
                     {{"deletion", r.op_counts[0]},
                      {"substitution", r.op_counts[1]},
                      {"insertion", r.op_counts[2]}}},
                    {"exhausted_sentences", r.exhausted_sentences}};
    if (!manifest.empty()) WriteOutput(manifest, m.dump(2) + "\n");
    return kExitOk;
  }
};

struct BleuCmd {
  std::string hyp;
  std::vector<std::string> refs;
  bool smooth = false;

  void Add(CLI::App* app) {
    app->add_option("--hyp", hyp, "Hypothesis corpus")->required();
    app->add_option("--ref", refs, "Reference corpus (repeatable)")->required();
    app->add_flag("--smooth", smooth, "Add-one smoothing of higher-order precisions");
  }

  int Run() const {
    std::vector<Corpus> references;
    for (const std::string& r : refs) references.push_back(ReadCorpusFile(r));
    PrintReport(BleuDoc(Bleu(ReadCorpusFile(hyp), references, BleuOptions{smooth})));
    return kExitOk;
  }
};

struct VocabCmd {
  std::vector<std::string> inputs;
  std::vector<std::string> exclude;

  void Add(CLI::App* app) {
    app->add_option("--input", inputs, "Corpus (repeatable)")->required();
    app->add_option("--exclude", exclude, "Tokens not counted (e.g. a separator)");
  }

  int Run() const {
    std::vector<Corpus> corpora;
    for (const std::string& p : inputs) corpora.push_back(ReadCorpusFile(p));
    std::map<std::string, VocabReport> streams;
    std::vector<const Corpus*> all;
    for (size_t i = 0; i < corpora.size(); ++i) {
      streams[inputs[i]] = VocabStatsUnion({&corpora[i]}, exclude);
      all.push_back(&corpora[i]);
    }
    if (corpora.size() > 1) streams["(union)"] = VocabStatsUnion(all, exclude);
    PrintReport(VocabDoc(streams));
    return kExitOk;
  }
};

int Main(int argc, char** argv) {
  CLI::App app{"pnmt: phonetic encodings, random clustering, BPE and embedding geometry "
               "for translation corpora"};
  app.name("pnmt");
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();
  app.failure_message(CLI::FailureMessage::help);
  app.add_option("--seed", g.seed, "Seed for randomized commands, or 'auto'");
  app.add_option("--config", g.config, "Flat 'flag = value' file; command-line flags win");
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  EncodeCmd encode;
  encode.Add(app.add_subcommand("encode", "Encode a corpus with a phonetic or table codec"));
  ClusterCmd cluster;
  cluster.Add(app.add_subcommand("cluster", "Random clustering or K-Means over units"));

  CLI::App* bpe = app.add_subcommand("bpe", "Byte pair encoding");
  bpe->require_subcommand(1);
  BpeLearnCmd bpe_learn;
  bpe_learn.Add(bpe->add_subcommand("learn", "Learn merge operations"));
  BpeApplyCmd bpe_apply, bpe_decode;
  bpe_apply.Add(bpe->add_subcommand("apply", "Segment a corpus"), false);
  bpe_decode.Add(bpe->add_subcommand("decode", "Undo segmentation"), true);

  CLI::App* pipeline = app.add_subcommand("pipeline", "End-to-end corpus preparation");
  pipeline->require_subcommand(1);
  PipelineCmd pipeline_run;
  pipeline_run.Add(pipeline->add_subcommand("run", "Encode, segment and combine"));

  CLI::App* geometry = app.add_subcommand("geometry", "Embedding-space analysis");
  geometry->require_subcommand(1);
  EmbedCmd embed;
  embed.Add(geometry->add_subcommand("embed", "Train PPMI+SVD embeddings"));
  ProjectCmd project;
  project.Add(geometry->add_subcommand("project", "PCA projection to 2-D"));
  GammaCmd gamma;
  gamma.Add(geometry->add_subcommand("gamma", "Concentration factor"));
  DensityCmd density;
  density.Add(geometry->add_subcommand("density", "Nearest-neighbour density measure"));
  CdfCmd cdf;
  cdf.Add(geometry->add_subcommand("cdf", "CDF of per-group hull volumes"));
  CoverageCmd coverage;
  coverage.Add(geometry->add_subcommand("coverage", "Cumulative hull volume as groups are added"));

  CLI::App* augment = app.add_subcommand("augment", "Robustness data generation");
  augment->require_subcommand(1);
  NoiseCmd noise;
  noise.Add(augment->add_subcommand("noise", "Embedding-similarity word substitution"));
  PerturbCmd perturb;
  perturb.Add(augment->add_subcommand("perturb", "Random edit operations"));

  CLI::App* eval = app.add_subcommand("eval", "Evaluation");
  eval->require_subcommand(1);
  BleuCmd bleu;
  bleu.Add(eval->add_subcommand("bleu", "Corpus BLEU-4"));
  VocabCmd vocab;
  vocab.Add(eval->add_subcommand("vocab", "Unique and total token counts"));

  for (CLI::App* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (CLI::App* leaf : sub->get_subcommands({})) leaf->fallthrough();
  }

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    for (size_t i = 0; i < args.size(); ++i) {
      if (args[i].starts_with("-")) {
        if (args[i] == "--seed" || args[i] == "--config" || args[i] == "--format") ++i;
        continue;
      }
      if (app.get_subcommand_no_throw(args[i]) == nullptr) {
        std::cerr << "error: unknown subcommand '" << args[i] << "'\n" << app.help();
        return kExitUsage;
      }
      break;
    }
    args = InjectConfig(app, std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }

  try {
    if (app.got_subcommand("encode")) return encode.Run();
    if (app.got_subcommand("cluster")) return cluster.Run();
    if (bpe->got_subcommand("learn")) return bpe_learn.Run();
    if (bpe->got_subcommand("apply")) return bpe_apply.Run();
    if (bpe->got_subcommand("decode")) return bpe_decode.Run();
    if (pipeline->got_subcommand("run")) return pipeline_run.Run();
    if (geometry->got_subcommand("embed")) return embed.Run();
    if (geometry->got_subcommand("project")) return project.Run();
    if (geometry->got_subcommand("gamma")) return gamma.Run();
    if (geometry->got_subcommand("density")) return density.Run();
    if (geometry->got_subcommand("cdf")) return cdf.Run();
    if (geometry->got_subcommand("coverage")) return coverage.Run();
    if (augment->got_subcommand("noise")) return noise.Run();
    if (augment->got_subcommand("perturb")) return perturb.Run();
    if (eval->got_subcommand("bleu")) return bleu.Run();
    if (eval->got_subcommand("vocab")) return vocab.Run();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  std::cerr << app.help();
  return kExitUsage;
}

}  // namespace
}  // namespace pnmt

int main(int argc, char** argv) { return pnmt::Main(argc, argv); }
