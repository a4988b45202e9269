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


// Python bindings for the core operations.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "pnmt/augment.h"
#include "pnmt/clustering.h"
#include "pnmt/codecs.h"
#include "pnmt/error.h"
#include "pnmt/evaluate.h"
#include "pnmt/geometry.h"
#include "pnmt/pipeline.h"
#include "pnmt/subword.h"
#include "pnmt/text.h"

namespace py = pybind11;

namespace pnmt {
namespace {

using XY = std::pair<double, double>;

Corpus ToCorpus(const std::vector<std::string>& lines) {
  Corpus out;
  out.reserve(lines.size());
  for (const std::string& l : lines) out.push_back(SplitWhitespace(l));
  return out;
}

std::vector<Point2> ToPoints(const std::vector<XY>& xy) {
  std::vector<Point2> out;
  out.reserve(xy.size());
  for (const auto& [x, y] : xy) out.push_back({x, y});
  return out;
}

std::vector<XY> FromPoints(const std::vector<Point2>& pts) {
  std::vector<XY> out;
  out.reserve(pts.size());
  for (const Point2& p : pts) out.emplace_back(p.x, p.y);
  return out;
}

std::optional<HullParams> Params(std::optional<double> beta, std::optional<double> radius) {
  if (!beta && !radius) return std::nullopt;
  HullParams p;
  if (beta) p.beta = *beta;
  if (radius) p.radius = *radius;
  return p;
}

PhoneticCodec CodecOrThrow(const std::string& name) {
  const auto codec = ParsePhoneticCodec(name);
  if (!codec) throw Error(ErrorCode::kInvalidArgument, "unknown codec " + name);
  return *codec;
}

}  // namespace
}  // namespace pnmt

PYBIND11_MODULE(_core, m) {
  using namespace pnmt;
  m.doc() = "Phonetic encodings, subword segmentation and embedding geometry.";
  m.attr("__version__") = std::string(kVersion);

  static py::exception<Error> error(m, "PnmtError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(ErrorCodeName(e.code())) + ": " + e.what()).c_str());
    }
  });

  // Codecs.
  m.def("soundex", [](const std::string& t) { return SoundexEncode(t); }, py::arg("token"));
  m.def(
      "nysiis",
      [](const std::string& t, bool truncate) { return NysiisEncode(t, NysiisOptions{truncate}); },
      py::arg("token"), py::arg("truncate") = false);
  m.def("metaphone", [](const std::string& t) { return MetaphoneEncode(t); }, py::arg("token"));
  m.def(
      "encode",
      [](const std::string& codec, const std::string& t) {
        return PhoneticEncode(CodecOrThrow(codec), t);
      },
      py::arg("codec"), py::arg("token"));

  // Clustering.
  m.def(
      "random_cluster",
      [](const std::vector<std::string>& units, const std::string& baseline, uint64_t seed) {
        const auto encoder = MakePhoneticEncoder(CodecOrThrow(baseline));
        const ClusterModel model = RandomCluster(units, DeriveSizeDistribution(units, *encoder), seed);
        return std::map<std::string, std::string>(model.assignment().begin(), model.assignment().end());
      },
      py::arg("units"), py::arg("baseline") = "metaphone", py::arg("seed") = 0);
  m.def(
      "kmeans",
      [](const Eigen::MatrixXd& points, int k, uint64_t seed, int max_iter) {
        KMeansOptions options;
        options.max_iter = max_iter;
        const KMeansModel model = KMeansFit(points, k, seed, options);
        return std::make_tuple(model.assignment, model.centroids, model.cost_history.empty() ? 0.0 : model.cost_history.back());
      },
      py::arg("points"), py::arg("k"), py::arg("seed") = 0, py::arg("max_iter") = 100);

  // Subword segmentation.
  py::class_<BpeModel>(m, "BpeModel")
      .def_static(
          "learn",
          [](const std::vector<std::string>& lines, int operations, const std::string& cont) {
            return BpeLearn(ToCorpus(lines), operations, cont);
          },
          py::arg("lines"), py::arg("operations"), py::arg("continuation") = "@@")
      .def_static(
          "parse", [](const std::string& text) { return BpeModel::Parse(text); }, py::arg("text"))
      .def_property_readonly("merges", &BpeModel::merges)
      .def_property_readonly("continuation", &BpeModel::continuation)
      .def("serialize", &BpeModel::Serialize)
      .def(
          "apply",
          [](const BpeModel& model, const std::string& line) {
            return JoinTokens(BpeApply(SplitWhitespace(line), model));
          },
          py::arg("line"))
      .def(
          "decode",
          [](const BpeModel& model, const std::string& line) {
            return JoinTokens(BpeDecode(SplitWhitespace(line), model.continuation()));
          },
          py::arg("line"));

  // Geometry.
  m.def(
      "train_embeddings",
      [](const std::vector<std::string>& lines, int dimension, int window, uint64_t seed) {
        EmbeddingOptions options;
        options.dimension = dimension;
        options.window = window;
        options.seed = seed;
        const EmbeddingTable table = TrainEmbeddings(ToCorpus(lines), options);
        return std::make_pair(table.units(), table.vectors());
      },
      py::arg("lines"), py::arg("dimension") = 100, py::arg("window") = 2, py::arg("seed") = 0);
  m.def(
      "pca_project",
      [](const std::vector<std::string>& units, const Eigen::MatrixXd& vectors) {
        const ProjectedTable p = PcaProject(EmbeddingTable(units, vectors));
        std::map<std::string, XY> out;
        for (const auto& [unit, pt] : p.points) out[unit] = {pt.x, pt.y};
        return out;
      },
      py::arg("units"), py::arg("vectors"));
  m.def(
      "convex_hull", [](const std::vector<XY>& pts) { return FromPoints(ConvexHull(ToPoints(pts))); },
      py::arg("points"));
  m.def(
      "hull_volume",
      [](const std::vector<XY>& pts, std::optional<double> beta, std::optional<double> radius) {
        return SmoothHull(ToPoints(pts), Params(beta, radius)).volume;
      },
      py::arg("points"), py::arg("beta") = py::none(), py::arg("radius") = py::none());
  m.def(
      "concentration_factor",
      [](const std::vector<std::vector<XY>>& groups) {
        std::vector<PointGroup> g;
        for (const auto& group : groups) g.push_back(ToPoints(group));
        return ConcentrationFactor(g).gamma;
      },
      py::arg("groups"));
  m.def(
      "density",
      [](const std::vector<XY>& all_points, const std::vector<std::vector<XY>>& groups,
         uint64_t seed, int max_neighbor, size_t budget) {
        std::vector<PointGroup> g;
        for (const auto& group : groups) g.push_back(ToPoints(group));
        DensityOptions options;
        options.max_neighbor = max_neighbor;
        options.sample_budget = budget;
        const DensityReport r = DensityMeasure(ToPoints(all_points), g, HullParams{}, seed, options);
        return py::dict(py::arg("max") = r.max_density, py::arg("sum") = r.sum_density,
                        py::arg("mean") = r.mean_density, py::arg("samples") = r.samples_used,
                        py::arg("converged") = r.converged);
      },
      py::arg("all_points"), py::arg("groups"), py::arg("seed") = 0, py::arg("max_neighbor") = 3,
      py::arg("budget") = 20000);

  // Augmentation.
  m.def(
      "perturb",
      [](const std::string& line, const std::vector<std::string>& vocab, int k, uint64_t seed) {
        PerturbationSpec spec;
        spec.k = k;
        spec.seed = seed;
        return JoinTokens(PerturbEdit(SplitWhitespace(line), vocab, spec).tokens);
      },
      py::arg("line"), py::arg("vocab"), py::arg("k"), py::arg("seed") = 0);
  m.def(
      "edit_distance",
      [](const std::string& a, const std::string& b) {
        return EditDistance(SplitWhitespace(a), SplitWhitespace(b));
      },
      py::arg("a"), py::arg("b"));

  // Evaluation.
  m.def(
      "bleu",
      [](const std::vector<std::string>& hyp, const std::vector<std::string>& ref, bool smooth) {
        return Bleu(ToCorpus(hyp), ToCorpus(ref), BleuOptions{smooth}).bleu;
      },
      py::arg("hypotheses"), py::arg("references"), py::arg("smooth") = false);

  // Pipeline.
  m.def(
      "run_pipeline",
      [](const std::string& config_json, const std::string& output_dir) {
        PipelineConfig config = PipelineConfigFromJson(config_json);
        config.output_dir = output_dir;
        return RunPipeline(config).manifest_json;
      },
      py::arg("config_json"), py::arg("output_dir"));
  m.def("directory_digest", &DirectoryDigest, py::arg("path"));
}
