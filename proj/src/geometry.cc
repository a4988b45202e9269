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

#include "pnmt/geometry.h"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

#include "pnmt/rng.h"

namespace pnmt {

// ---------------------------------------------------------------------------
// Embeddings

EmbeddingTable::EmbeddingTable(std::vector<std::string> units,
                               Eigen::MatrixXd vectors)
    : units_(std::move(units)), vectors_(std::move(vectors)) {
  if (static_cast<Eigen::Index>(units_.size()) != vectors_.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "unit count != vector rows");
  }
  if (!units_.empty() && vectors_.cols() < 2) {
    throw Error(ErrorCode::kDimensionMismatch, "embedding dimension must be >= 2");
  }
  if (!vectors_.allFinite()) {
    throw Error(ErrorCode::kMalformedFloat, "embedding contains NaN or Inf");
  }
  index_.reserve(units_.size());
  for (size_t i = 0; i < units_.size(); ++i) {
    if (!index_.emplace(units_[i], static_cast<int>(i)).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate unit " + units_[i]);
    }
  }
}

int EmbeddingTable::IndexOf(std::string_view unit) const {
  auto it = index_.find(std::string(unit));
  return it == index_.end() ? -1 : it->second;
}

Eigen::VectorXd EmbeddingTable::Vector(std::string_view unit) const {
  const int i = IndexOf(unit);
  if (i < 0) throw Error(ErrorCode::kInvalidArgument, "no vector for " + std::string(unit));
  return vectors_.row(i).transpose();
}

void EmbeddingTable::Save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out.precision(17);
  for (size_t i = 0; i < units_.size(); ++i) {
    out << units_[i];
    for (Eigen::Index j = 0; j < vectors_.cols(); ++j) {
      out << ' ' << vectors_(static_cast<Eigen::Index>(i), j);
    }
    out << '\n';
  }
}

EmbeddingTable LoadEmbeddings(const std::string& path, Diagnostics* diag) {
  std::vector<std::string> units;
  std::vector<std::vector<double>> rows;
  std::unordered_map<std::string, size_t> seen;
  size_t dim = 0;
  size_t line_no = 0;
  for (const std::string& line : ReadLines(path)) {
    ++line_no;
    const Sentence fields = SplitWhitespace(line);
    if (fields.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    if (dim == 0) dim = fields.size() - 1;
    if (dim == 0 || fields.size() - 1 != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  where + ": expected " + std::to_string(dim) + " values, got " +
                      std::to_string(fields.size() - 1));
    }
    std::vector<double> row(dim);
    for (size_t j = 0; j < dim; ++j) {
      const std::string& f = fields[j + 1];
      auto [end, ec] = std::from_chars(f.data(), f.data() + f.size(), row[j]);
      if (ec != std::errc() || end != f.data() + f.size() || !std::isfinite(row[j])) {
        throw Error(ErrorCode::kMalformedFloat, where + ": bad value '" + f + "'");
      }
    }
    auto [it, inserted] = seen.emplace(fields[0], units.size());
    if (inserted) {
      units.push_back(fields[0]);
      rows.push_back(std::move(row));
    } else {
      WarnIf(diag, where + ": duplicate unit '" + fields[0] + "', last entry wins");
      rows[it->second] = std::move(row);
    }
  }
  if (units.empty()) throw Error(ErrorCode::kEmptyEmbedding, path + ": no vectors");
  Eigen::MatrixXd vectors(units.size(), dim);
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < dim; ++j) {
      vectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return EmbeddingTable(std::move(units), std::move(vectors));
}

namespace {

Eigen::MatrixXd OrthonormalBasis(const Eigen::MatrixXd& y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
  return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

template <typename Matrix>
SvdResult RandomizedSvd(const Matrix& a, int rank, uint64_t seed,
                        int oversampling, int power_iterations) {
  const Eigen::Index n = a.rows(), m = a.cols();
  const Eigen::Index full = std::min(n, m);
  if (rank < 1 || rank > full) {
    throw Error(ErrorCode::kInvalidArgument,
                "rank " + std::to_string(rank) + " outside [1, " +
                    std::to_string(full) + "]");
  }
  const Eigen::Index l = std::min<Eigen::Index>(rank + oversampling, full);
  Rng rng(seed);
  Eigen::MatrixXd omega(m, l);
  for (Eigen::Index j = 0; j < l; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) omega(i, j) = rng.Gaussian();
  }
  Eigen::MatrixXd q = OrthonormalBasis(a * omega);
  for (int it = 0; it < power_iterations; ++it) {
    const Eigen::MatrixXd z = OrthonormalBasis(a.transpose() * q);
    q = OrthonormalBasis(a * z);
  }
  const Eigen::MatrixXd b = (a.transpose() * q).transpose();  // l x m
  Eigen::BDCSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdResult result;
  result.u = (q * svd.matrixU()).leftCols(rank);
  result.sigma = svd.singularValues().head(rank);
  result.v = svd.matrixV().leftCols(rank);
  // Fix signs: the largest-magnitude entry of each left vector is positive.
  for (int c = 0; c < rank; ++c) {
    Eigen::Index arg;
    result.u.col(c).cwiseAbs().maxCoeff(&arg);
    if (result.u(arg, c) < 0) {
      result.u.col(c) *= -1.0;
      result.v.col(c) *= -1.0;
    }
  }
  return result;
}

}  // namespace

SvdResult TruncatedSvd(const Eigen::MatrixXd& matrix, int rank, uint64_t seed,
                       int oversampling, int power_iterations) {
  return RandomizedSvd(matrix, rank, seed, oversampling, power_iterations);
}

SvdResult TruncatedSvd(const Eigen::SparseMatrix<double>& matrix, int rank,
                       uint64_t seed, int oversampling, int power_iterations) {
  return RandomizedSvd(matrix, rank, seed, oversampling, power_iterations);
}

PpmiMatrix BuildPpmi(const Corpus& corpus, int window, size_t max_vocab) {
  if (window < 1) throw Error(ErrorCode::kInvalidArgument, "window must be >= 1");
  std::map<std::string, int64_t> freq;
  for (const Sentence& s : corpus) {
    for (const std::string& w : s) ++freq[w];
  }
  if (freq.empty()) throw Error(ErrorCode::kEmptyCorpus, "no tokens");

  PpmiMatrix out;
  if (max_vocab > 0 && freq.size() > max_vocab) {
    std::vector<std::pair<int64_t, std::string>> ranked;
    for (const auto& [w, c] : freq) ranked.emplace_back(-c, w);
    std::sort(ranked.begin(), ranked.end());
    for (size_t i = 0; i < max_vocab; ++i) out.vocabulary.push_back(ranked[i].second);
    std::sort(out.vocabulary.begin(), out.vocabulary.end());
  } else {
    for (const auto& [w, c] : freq) out.vocabulary.push_back(w);
  }
  std::unordered_map<std::string, int> index;
  for (size_t i = 0; i < out.vocabulary.size(); ++i) {
    index.emplace(out.vocabulary[i], static_cast<int>(i));
  }

  std::map<std::pair<int, int>, double> counts;
  for (const Sentence& s : corpus) {
    std::vector<int> ids;
    for (const std::string& w : s) {
      auto it = index.find(w);
      if (it != index.end()) ids.push_back(it->second);
    }
    for (size_t i = 0; i < ids.size(); ++i) {
      const size_t hi = std::min(ids.size(), i + static_cast<size_t>(window) + 1);
      for (size_t j = i + 1; j < hi; ++j) {
        counts[{ids[i], ids[j]}] += 1.0;
        counts[{ids[j], ids[i]}] += 1.0;
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(out.vocabulary.size());
  Eigen::VectorXd row_sum = Eigen::VectorXd::Zero(n);
  double total = 0.0;
  for (const auto& [key, c] : counts) {
    row_sum[key.first] += c;
    total += c;
  }
  std::vector<Eigen::Triplet<double>> triplets;
  for (const auto& [key, c] : counts) {
    const double pmi = std::log(c * total / (row_sum[key.first] * row_sum[key.second]));
    if (pmi > 0.0) triplets.emplace_back(key.first, key.second, pmi);
  }
  out.values.resize(n, n);
  out.values.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

EmbeddingTable TrainEmbeddings(const Corpus& corpus, EmbeddingOptions options,
                               Diagnostics* diag) {
  if (options.dimension < 2) {
    throw Error(ErrorCode::kInvalidArgument, "dimension must be >= 2");
  }
  PpmiMatrix ppmi = BuildPpmi(corpus, options.window, options.max_vocab);
  const int vocab = static_cast<int>(ppmi.vocabulary.size());
  int dim = options.dimension;
  if (vocab < dim) {
    if (vocab < 2) {
      throw Error(ErrorCode::kEmptyCorpus, "vocabulary too small to embed");
    }
    WarnIf(diag, "RankDeficient: vocabulary of " + std::to_string(vocab) +
                     " is smaller than d=" + std::to_string(dim) +
                     "; reducing d to " + std::to_string(vocab));
    dim = vocab;
  }
  const SvdResult svd = TruncatedSvd(ppmi.values, dim, options.seed);
  Eigen::MatrixXd vectors = svd.u * svd.sigma.cwiseSqrt().asDiagonal();
  return EmbeddingTable(std::move(ppmi.vocabulary), std::move(vectors));
}

// ---------------------------------------------------------------------------
// Projection

Point2 Projection2D::Project(const Eigen::VectorXd& v) const {
  const Eigen::Vector2d p = components * (v - mean);
  return {p[0], p[1]};
}

ProjectedTable PcaProject(const EmbeddingTable& table) {
  if (table.size() < 3) {
    throw Error(ErrorCode::kDegenerateData, "PCA needs at least 3 units");
  }
  const Eigen::MatrixXd& x = table.vectors();
  const Eigen::VectorXd mean = x.colwise().mean().transpose();
  const Eigen::MatrixXd centered = x.rowwise() - mean.transpose();
  const double n = static_cast<double>(x.rows());
  const Eigen::MatrixXd cov = centered.transpose() * centered / n;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const Eigen::Index d = cov.rows();
  const double top = eig.eigenvalues()[d - 1];
  if (!(top > 1e-300) || centered.cwiseAbs().maxCoeff() == 0.0) {
    throw Error(ErrorCode::kDegenerateData, "all points identical");
  }
  ProjectedTable out;
  out.projection.mean = mean;
  out.projection.components.resize(2, d);
  for (int c = 0; c < 2; ++c) {
    Eigen::VectorXd v = eig.eigenvectors().col(d - 1 - c);
    Eigen::Index arg;
    v.cwiseAbs().maxCoeff(&arg);
    if (v[arg] < 0) v = -v;
    out.projection.components.row(c) = v.transpose();
  }
  const Eigen::MatrixXd projected = centered * out.projection.components.transpose();
  out.variance = projected.colwise().squaredNorm().transpose() / n;
  for (size_t i = 0; i < table.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    out.points.emplace(table.units()[i], Point2{projected(r, 0), projected(r, 1)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hulls

double HullParams::Threshold(size_t num_points) const {
  return beta < 1.0 ? beta * static_cast<double>(num_points) : beta;
}

namespace {

double Cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double Distance(const Point2& a, const Point2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

void ValidateParams(const HullParams& p) {
  if (!(p.beta > 0.0) || !(p.radius > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "hull params need beta > 0 and r > 0");
  }
}

}  // namespace

std::vector<Point2> ConvexHull(std::vector<Point2> points) {
  std::sort(points.begin(), points.end(), [](const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) return points;
  std::vector<Point2> hull(2 * points.size());
  size_t k = 0;
  for (const Point2& p : points) {
    while (k >= 2 && Cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
    const Point2& p = points[i];
    while (k >= lower && Cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

double PolygonArea(const std::vector<Point2>& polygon) {
  if (polygon.size() < 3) return 0.0;
  double twice = 0.0;
  for (size_t i = 0; i < polygon.size(); ++i) {
    const Point2& a = polygon[i];
    const Point2& b = polygon[(i + 1) % polygon.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return std::abs(twice) / 2.0;
}

namespace {

HullMetrics HullOf(std::vector<Point2> survivors, size_t removed) {
  HullMetrics out;
  out.removed_outliers = removed;
  out.vertices = ConvexHull(std::move(survivors));
  out.degenerate = out.vertices.size() < 3;
  out.volume = out.degenerate ? 0.0 : PolygonArea(out.vertices);
  return out;
}

}  // namespace

HullMetrics SmoothHull(const std::vector<Point2>& points,
                       const std::optional<HullParams>& params) {
  if (points.empty()) throw Error(ErrorCode::kInvalidArgument, "no points");
  if (!params) return HullOf(points, 0);
  ValidateParams(*params);
  const double threshold = params->Threshold(points.size());
  std::vector<Point2> survivors;
  for (size_t i = 0; i < points.size(); ++i) {
    size_t neighbours = 0;
    for (size_t j = 0; j < points.size(); ++j) {
      if (j != i && Distance(points[i], points[j]) <= params->radius) ++neighbours;
    }
    if (static_cast<double>(neighbours) >= threshold) survivors.push_back(points[i]);
  }
  if (survivors.empty()) {
    throw Error(ErrorCode::kAllPointsRemoved,
                "smoothing removed all " + std::to_string(points.size()) +
                    " points (beta=" + std::to_string(params->beta) +
                    ", r=" + std::to_string(params->radius) + ")");
  }
  const size_t removed = points.size() - survivors.size();
  return HullOf(std::move(survivors), removed);
}

std::vector<std::pair<int, double>> CoverageCurve(
    const std::vector<PointGroup>& groups, uint64_t order_seed,
    const std::optional<HullParams>& params) {
  if (groups.empty()) throw Error(ErrorCode::kInvalidArgument, "no groups");
  std::vector<size_t> order(groups.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(order_seed);
  rng.Shuffle(std::span<size_t>(order));

  std::vector<std::pair<int, double>> curve;
  std::vector<Point2> pool;
  for (size_t step = 0; step < order.size(); ++step) {
    const PointGroup& g = groups[order[step]];
    pool.insert(pool.end(), g.begin(), g.end());
    double volume = 0.0;
    if (!pool.empty()) {
      if (params) {
        volume = SmoothHull(pool, params).volume;
      } else {
        // The hull of a union only depends on the hull vertices so far.
        pool = ConvexHull(std::move(pool));
        volume = pool.size() < 3 ? 0.0 : PolygonArea(pool);
      }
    }
    curve.emplace_back(static_cast<int>(step + 1), volume);
  }
  return curve;
}

std::vector<std::pair<double, double>> VolumeCdf(
    const std::vector<PointGroup>& groups, const std::optional<HullParams>& params) {
  if (groups.empty()) throw Error(ErrorCode::kInvalidArgument, "no groups");
  std::vector<double> volumes;
  volumes.reserve(groups.size());
  for (const PointGroup& g : groups) {
    double v = 0.0;
    if (g.size() >= 3) {
      try {
        v = SmoothHull(g, params).volume;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kAllPointsRemoved) throw;
      }
    }
    volumes.push_back(v);
  }
  std::sort(volumes.begin(), volumes.end());
  std::vector<std::pair<double, double>> cdf;
  const double n = static_cast<double>(volumes.size());
  for (size_t k = 0; k < volumes.size(); ++k) {
    cdf.emplace_back(volumes[k], static_cast<double>(k + 1) / n);
  }
  return cdf;
}

double CdfQuantile(const std::vector<std::pair<double, double>>& cdf, double q) {
  if (cdf.empty()) throw Error(ErrorCode::kInvalidArgument, "empty CDF");
  const double h = (static_cast<double>(cdf.size()) - 1.0) * std::clamp(q, 0.0, 1.0);
  const auto lo = static_cast<size_t>(std::floor(h));
  const size_t hi = std::min(lo + 1, cdf.size() - 1);
  return cdf[lo].first + (h - static_cast<double>(lo)) * (cdf[hi].first - cdf[lo].first);
}

// ---------------------------------------------------------------------------
// Concentration factor

GammaReport ConcentrationFactor(const std::vector<PointGroup>& groups) {
  GammaReport report;
  for (const PointGroup& g : groups) {
    if (g.empty()) continue;
    Point2 c;
    for (const Point2& p : g) {
      c.x += p.x;
      c.y += p.y;
    }
    c.x /= static_cast<double>(g.size());
    c.y /= static_cast<double>(g.size());
    report.centroids.push_back(c);
    report.group_sizes.push_back(g.size());
    for (const Point2& p : g) report.denominator += Distance(p, c);
  }
  report.num_groups = report.centroids.size();
  if (report.num_groups == 0) {
    throw Error(ErrorCode::kInvalidArgument, "no points in any group");
  }
  Point2 mean;
  for (const Point2& c : report.centroids) {
    mean.x += c.x;
    mean.y += c.y;
  }
  mean.x /= static_cast<double>(report.num_groups);
  mean.y /= static_cast<double>(report.num_groups);
  for (const Point2& c : report.centroids) report.numerator += Distance(c, mean);
  if (!(report.denominator > 0.0)) {
    throw Error(ErrorCode::kZeroDispersion,
                "every group collapses to its centroid");
  }
  report.gamma = report.numerator / report.denominator;
  return report;
}

// ---------------------------------------------------------------------------
// Density

DensityReport DensityAgainstReference(const std::vector<Point2>& hull_corners,
                                      const std::vector<Point2>& reference,
                                      uint64_t seed, const DensityOptions& options) {
  const int max_i = options.max_neighbor;
  if (max_i < 1) throw Error(ErrorCode::kInvalidArgument, "neighbor index must be >= 1");
  if (reference.size() < static_cast<size_t>(max_i)) {
    throw Error(ErrorCode::kInsufficientGroups,
                "reference set has " + std::to_string(reference.size()) +
                    " points, need " + std::to_string(max_i));
  }
  if (hull_corners.empty()) throw Error(ErrorCode::kDegenerateData, "no hull corners");
  if (options.batch_size == 0 || options.sample_budget == 0) {
    throw Error(ErrorCode::kInvalidArgument, "batch size and budget must be positive");
  }

  DensityReport report;
  report.converge_threshold = options.threshold;
  report.max_density.assign(max_i, 0.0);
  report.sum_density.assign(max_i, 0.0);
  report.mean_density.assign(max_i, 0.0);
  report.reference_size = reference.size();
  report.hull_corners = hull_corners;

  std::vector<double> weights(hull_corners.size());
  std::vector<double> dist(reference.size());
  std::vector<double> previous_mean;
  size_t drawn = 0;
  while (drawn < options.sample_budget) {
    const size_t batch_end = std::min(drawn + options.batch_size, options.sample_budget);
    for (; drawn < batch_end; ++drawn) {
      Rng rng(DeriveSeed(seed, drawn + 1));
      double total = 0.0;
      for (double& w : weights) {
        w = rng.UniformDouble();
        total += w;
      }
      Point2 sample;
      if (total > 0.0) {
        for (size_t c = 0; c < hull_corners.size(); ++c) {
          sample.x += hull_corners[c].x * weights[c] / total;
          sample.y += hull_corners[c].y * weights[c] / total;
        }
      } else {
        sample = hull_corners.front();
      }
      for (size_t r = 0; r < reference.size(); ++r) dist[r] = Distance(sample, reference[r]);
      std::partial_sort(dist.begin(), dist.begin() + max_i, dist.end());
      for (int i = 0; i < max_i; ++i) {
        report.sum_density[i] += dist[i];
        report.max_density[i] = std::max(report.max_density[i], dist[i]);
      }
      if (options.keep_samples) report.samples.push_back(sample);
    }
    std::vector<double> mean(max_i);
    for (int i = 0; i < max_i; ++i) mean[i] = report.sum_density[i] / static_cast<double>(drawn);
    if (!previous_mean.empty()) {
      bool stable = true;
      for (int i = 0; i < max_i; ++i) {
        if (std::abs(mean[i] - previous_mean[i]) >= options.threshold) stable = false;
      }
      if (stable) {
        report.converged = true;
        previous_mean = std::move(mean);
        break;
      }
    }
    previous_mean = std::move(mean);
  }
  report.samples_used = drawn;
  report.mean_density = previous_mean;
  return report;
}

DensityReport DensityMeasure(const std::vector<Point2>& all_points,
                             const std::vector<PointGroup>& groups,
                             const std::optional<HullParams>& params,
                             uint64_t seed, DensityOptions options) {
  std::vector<size_t> candidates;
  for (size_t g = 0; g < groups.size(); ++g) {
    if (!groups[g].empty()) candidates.push_back(g);
  }
  if (candidates.size() < options.groups_per_draw) {
    throw Error(ErrorCode::kInsufficientGroups,
                std::to_string(candidates.size()) + " non-empty groups, need " +
                    std::to_string(options.groups_per_draw));
  }
  Rng rng(DeriveSeed(seed, 0));
  // Partial Fisher-Yates: the first groups_per_draw entries are the draw.
  for (size_t i = 0; i < options.groups_per_draw; ++i) {
    const size_t j = i + rng.UniformInt(candidates.size() - i);
    std::swap(candidates[i], candidates[j]);
  }
  std::vector<size_t> chosen(candidates.begin(),
                             candidates.begin() + static_cast<std::ptrdiff_t>(options.groups_per_draw));
  std::sort(chosen.begin(), chosen.end());
  std::vector<Point2> reference;
  for (size_t g : chosen) reference.insert(reference.end(), groups[g].begin(), groups[g].end());

  const HullMetrics hull = SmoothHull(all_points, params);
  if (hull.degenerate) {
    throw Error(ErrorCode::kDegenerateData, "smoothed hull of all points is degenerate");
  }
  DensityReport report = DensityAgainstReference(hull.vertices, reference, seed, options);
  report.chosen_groups = std::move(chosen);
  return report;
}

// ---------------------------------------------------------------------------
// Grouping

GroupedPoints GroupPoints(const std::map<std::string, Point2>& projected,
                          const std::map<std::string, std::string>& encoding) {
  std::map<std::string, PointGroup> by_key;
  GroupedPoints out;
  for (const auto& [unit, code] : encoding) {
    auto it = projected.find(unit);
    if (it == projected.end()) {
      ++out.missing;
      continue;
    }
    by_key[code].push_back(it->second);
  }
  for (auto& [key, group] : by_key) {
    out.keys.push_back(key);
    out.groups.push_back(std::move(group));
  }
  return out;
}

}  // namespace pnmt
