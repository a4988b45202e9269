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

// Embedding-space analysis of how widely the members of one code (or
// cluster) spread out: PPMI+SVD embeddings, a 2-D PCA projection, smoothed
// convex hulls, coverage curves, hull-volume CDFs, the concentration factor
// and the nearest-neighbour density measure.

#ifndef PNMT_GEOMETRY_H_
#define PNMT_GEOMETRY_H_

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pnmt/error.h"
#include "pnmt/text.h"

namespace pnmt {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

using PointGroup = std::vector<Point2>;

// ---------------------------------------------------------------------------
// Embeddings

class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(std::vector<std::string> units, Eigen::MatrixXd vectors);

  int dimension() const { return static_cast<int>(vectors_.cols()); }
  size_t size() const { return units_.size(); }
  const std::vector<std::string>& units() const { return units_; }
  const Eigen::MatrixXd& vectors() const { return vectors_; }

  // Row index or -1.
  int IndexOf(std::string_view unit) const;
  bool Contains(std::string_view unit) const { return IndexOf(unit) >= 0; }
  Eigen::VectorXd Vector(std::string_view unit) const;

  // `unit v1 ... vd` per line, 17 significant digits.
  void Save(const std::string& path) const;

 private:
  std::vector<std::string> units_;
  Eigen::MatrixXd vectors_;  // size() x d
  std::unordered_map<std::string, int> index_;
};

// Dimension comes from the first line and is enforced on the rest. A
// duplicate unit replaces the earlier vector and records a warning.
EmbeddingTable LoadEmbeddings(const std::string& path, Diagnostics* diag = nullptr);

struct SvdResult {
  Eigen::MatrixXd u;       // n x rank
  Eigen::VectorXd sigma;   // rank, descending
  Eigen::MatrixXd v;       // m x rank
};

// Seeded randomized truncated SVD (Gaussian range finder with power
// iterations). Exact when rank + oversampling >= min(rows, cols).
SvdResult TruncatedSvd(const Eigen::MatrixXd& matrix, int rank, uint64_t seed,
                       int oversampling = 10, int power_iterations = 4);
SvdResult TruncatedSvd(const Eigen::SparseMatrix<double>& matrix, int rank,
                       uint64_t seed, int oversampling = 10,
                       int power_iterations = 4);

// Positive PMI over a symmetric window, vocabulary in sorted order.
struct PpmiMatrix {
  std::vector<std::string> vocabulary;
  Eigen::SparseMatrix<double> values;  // symmetric
};

// `max_vocab` > 0 keeps only the most frequent types (ties by spelling);
// other tokens are dropped before windowing.
PpmiMatrix BuildPpmi(const Corpus& corpus, int window, size_t max_vocab = 0);

struct EmbeddingOptions {
  int dimension = 100;
  int window = 2;
  uint64_t seed = 0;
  size_t max_vocab = 0;
};

// PPMI + truncated SVD; vectors are U * sqrt(Sigma). When the vocabulary is
// smaller than the requested dimension, the dimension is reduced and a
// RankDeficient warning recorded.
EmbeddingTable TrainEmbeddings(const Corpus& corpus, EmbeddingOptions options,
                               Diagnostics* diag = nullptr);

// ---------------------------------------------------------------------------
// Projection

struct Projection2D {
  Eigen::VectorXd mean;        // d
  Eigen::MatrixXd components;  // 2 x d, orthonormal rows

  Point2 Project(const Eigen::VectorXd& v) const;
};

struct ProjectedTable {
  Projection2D projection;
  std::map<std::string, Point2> points;
  Eigen::Vector2d variance;  // along component 1 and 2
};

// Mean-centred PCA. Components are sign-normalised so that their largest
// magnitude coordinate is positive.
ProjectedTable PcaProject(const EmbeddingTable& table);

// ---------------------------------------------------------------------------
// Hulls

// beta in (0, 1): fraction of the point count; beta >= 1: absolute count.
struct HullParams {
  double beta = 0.3;
  double radius = 10.0;

  // Minimum number of *other* points a survivor needs inside its r-ball.
  double Threshold(size_t num_points) const;
};

struct HullMetrics {
  std::vector<Point2> vertices;  // counter-clockwise
  double volume = 0.0;           // area
  size_t removed_outliers = 0;
  bool degenerate = false;       // fewer than 3 non-collinear survivors
};

// Convex hull (Andrew's monotone chain), collinear points dropped.
std::vector<Point2> ConvexHull(std::vector<Point2> points);
double PolygonArea(const std::vector<Point2>& polygon);

// Removes every point whose closed r-ball holds fewer than beta other points,
// then hulls the survivors. nullopt params disables smoothing. Throws
// kAllPointsRemoved when nothing survives.
HullMetrics SmoothHull(const std::vector<Point2>& points,
                       const std::optional<HullParams>& params);

// Cumulative hull volume as groups are added one by one in seeded order.
std::vector<std::pair<int, double>> CoverageCurve(
    const std::vector<PointGroup>& groups, uint64_t order_seed,
    const std::optional<HullParams>& params);

// Per-group hull volumes (groups under 3 points, or fully smoothed away,
// count as 0), ascending, paired with the empirical CDF k/n.
std::vector<std::pair<double, double>> VolumeCdf(
    const std::vector<PointGroup>& groups, const std::optional<HullParams>& params);

// Empirical quantile (type 7, linear interpolation) of the CDF's volumes.
double CdfQuantile(const std::vector<std::pair<double, double>>& cdf, double q);

// ---------------------------------------------------------------------------
// Concentration factor

struct GammaReport {
  double gamma = 0.0;
  double numerator = 0.0;    // sum_k |C_k - mean(C)|
  double denominator = 0.0;  // sum_k sum_i |p_ki - C_k|
  std::vector<Point2> centroids;
  std::vector<size_t> group_sizes;
  size_t num_groups = 0;
};

// Empty groups are ignored. Throws kZeroDispersion when every group is a
// single repeated point.
GammaReport ConcentrationFactor(const std::vector<PointGroup>& groups);

// ---------------------------------------------------------------------------
// Density measure

struct DensityOptions {
  int max_neighbor = 3;          // report D_1 .. D_max
  size_t sample_budget = 20000;  // m
  double threshold = 0.001;      // convergence on the running mean
  size_t batch_size = 64;
  size_t groups_per_draw = 5;
  bool keep_samples = false;
};

struct DensityReport {
  std::vector<double> max_density;   // index i-1
  std::vector<double> sum_density;   // raw sum over samples
  std::vector<double> mean_density;  // sum / samples_used
  double converge_threshold = 0.0;
  size_t samples_used = 0;
  bool converged = false;
  std::vector<size_t> chosen_groups;
  size_t reference_size = 0;
  std::vector<Point2> hull_corners;
  std::vector<Point2> samples;  // only with keep_samples
};

// Draws `groups_per_draw` random groups, pools their points as the
// reference set, and samples points inside the smoothed hull of
// `all_points` as random convex combinations of its corners. For every
// sample the distance to its i-th nearest reference point is accumulated.
// Sampling runs in batches until the running mean of D_max moves by less
// than `threshold` between batches or the budget is spent. Sample j uses
// the RNG substream DeriveSeed(seed, j + 1).
DensityReport DensityMeasure(const std::vector<Point2>& all_points,
                             const std::vector<PointGroup>& groups,
                             const std::optional<HullParams>& params,
                             uint64_t seed, DensityOptions options = {});

// Same measure with an explicit reference set (no group draw).
DensityReport DensityAgainstReference(const std::vector<Point2>& hull_corners,
                                      const std::vector<Point2>& reference,
                                      uint64_t seed, const DensityOptions& options);

// ---------------------------------------------------------------------------
// Grouping

struct GroupedPoints {
  std::vector<std::string> keys;   // sorted
  std::vector<PointGroup> groups;  // parallel to keys
  size_t missing = 0;              // encoded units without a projection
};

GroupedPoints GroupPoints(const std::map<std::string, Point2>& projected,
                          const std::map<std::string, std::string>& encoding);

}  // namespace pnmt

#endif  // PNMT_GEOMETRY_H_
