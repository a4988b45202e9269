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

#include "pnmt/clustering.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include "pnmt/error.h"
#include "pnmt/rng.h"

namespace pnmt {
namespace {

std::vector<std::string> SortedDistinct(const std::vector<std::string>& units) {
  if (units.empty()) throw Error(ErrorCode::kEmptyUnitList, "no units");
  std::vector<std::string> sorted = units;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::kInvalidArgument, "units must be distinct");
  }
  return sorted;
}

ClusterModel AssignSequential(std::vector<std::string> units,
                              const std::vector<size_t>& sizes, uint64_t seed,
                              ClusterSource source) {
  Rng rng(seed);
  rng.Shuffle(std::span<std::string>(units));
  std::map<std::string, std::string, std::less<>> assignment;
  size_t next = 0;
  for (size_t c = 0; c < sizes.size(); ++c) {
    const std::string id = "G" + std::to_string(c + 1);
    for (size_t j = 0; j < sizes[c]; ++j) {
      assignment.emplace(std::move(units[next++]), id);
    }
  }
  return ClusterModel(std::move(assignment), seed, source, sizes.size());
}

std::string_view SourceName(ClusterSource source) {
  return source == ClusterSource::kUniform ? "uniform-k" : "baseline-derived";
}

}  // namespace

size_t SizeDistribution::Total() const {
  size_t total = 0;
  for (size_t m : multiplicities) total += m;
  return total;
}

SizeDistribution DeriveSizeDistribution(const std::vector<std::string>& units,
                                        const Encoder& encoder) {
  const std::vector<std::string> sorted = SortedDistinct(units);
  std::map<std::string, size_t> groups;
  for (const std::string& unit : sorted) ++groups[encoder.UnitKey(unit)];
  SizeDistribution dist;
  dist.multiplicities.reserve(groups.size());
  for (const auto& [code, count] : groups) dist.multiplicities.push_back(count);
  return dist;
}

std::string_view ClusterModel::Lookup(std::string_view unit) const {
  auto it = assignment_.find(unit);
  return it == assignment_.end() ? kUnknownCluster : std::string_view(it->second);
}

std::vector<size_t> ClusterModel::ClusterSizes() const {
  std::vector<size_t> sizes(num_clusters_, 0);
  for (const auto& [unit, id] : assignment_) {
    const size_t index = std::stoul(id.substr(1));
    if (index == 0 || index > num_clusters_) {
      throw Error(ErrorCode::kInvalidArgument, "bad cluster id " + id);
    }
    ++sizes[index - 1];
  }
  return sizes;
}

void ClusterModel::Save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << "# pnmt cluster model v1\n";
  out << "# seed=" << seed_ << "\n";
  out << "# source=" << SourceName(source_) << "\n";
  out << "# clusters=" << num_clusters_ << "\n";
  for (const auto& [unit, id] : assignment_) out << unit << '\t' << id << '\n';
}

ClusterModel ClusterModel::Load(const std::string& path) {
  std::map<std::string, std::string, std::less<>> assignment;
  uint64_t seed = 0;
  ClusterSource source = ClusterSource::kBaselineDerived;
  size_t clusters = 0;
  size_t line_no = 0;
  for (const std::string& line : ReadLines(path)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.starts_with("# seed=")) seed = std::stoull(line.substr(7));
      if (line.starts_with("# source=")) {
        source = line.substr(9) == "uniform-k" ? ClusterSource::kUniform
                                               : ClusterSource::kBaselineDerived;
      }
      if (line.starts_with("# clusters=")) clusters = std::stoul(line.substr(11));
      continue;
    }
    const size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || line.size() < tab + 3 ||
        line[tab + 1] != 'G') {
      throw Error(ErrorCode::kInvalidArgument,
                  path + ":" + std::to_string(line_no) + ": expected unit<TAB>G<n>");
    }
    assignment.emplace(line.substr(0, tab), line.substr(tab + 1));
  }
  if (clusters == 0) {
    std::set<std::string> ids;
    for (const auto& [unit, id] : assignment) ids.insert(id);
    clusters = ids.size();
  }
  return ClusterModel(std::move(assignment), seed, source, clusters);
}

ClusterModel RandomCluster(const std::vector<std::string>& units,
                           const SizeDistribution& dist, uint64_t seed) {
  std::vector<std::string> sorted = SortedDistinct(units);
  if (dist.Total() != sorted.size()) {
    throw Error(ErrorCode::kSizeMismatch,
                "distribution covers " + std::to_string(dist.Total()) +
                    " units, got " + std::to_string(sorted.size()));
  }
  for (size_t m : dist.multiplicities) {
    if (m == 0) throw Error(ErrorCode::kInvalidArgument, "zero multiplicity");
  }
  return AssignSequential(std::move(sorted), dist.multiplicities, seed,
                          ClusterSource::kBaselineDerived);
}

std::vector<size_t> UniformClusterSizes(size_t num_units, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidFraction,
                "fraction must be in (0, 1], got " + std::to_string(fraction));
  }
  const auto k = static_cast<size_t>(
      std::llround(fraction * static_cast<double>(num_units)));
  if (k < 1) {
    throw Error(ErrorCode::kInvalidFraction,
                "fraction * units rounds to zero clusters");
  }
  std::vector<size_t> sizes(k, num_units / k);
  for (size_t i = 0; i < num_units % k; ++i) ++sizes[i];
  return sizes;
}

ClusterModel RandomClusterUniform(const std::vector<std::string>& units,
                                  double fraction, uint64_t seed) {
  std::vector<std::string> sorted = SortedDistinct(units);
  const std::vector<size_t> sizes = UniformClusterSizes(sorted.size(), fraction);
  return AssignSequential(std::move(sorted), sizes, seed, ClusterSource::kUniform);
}

Sentence EncodeWithClusters(const Sentence& sentence, const ClusterModel& model) {
  Sentence out;
  out.reserve(sentence.size());
  for (const std::string& token : sentence) out.emplace_back(model.Lookup(token));
  return out;
}

// ---------------------------------------------------------------------------
// K-Means

namespace {

// Squared distances, n x k.
Eigen::MatrixXd SquaredDistances(const Eigen::MatrixXd& points,
                                 const Eigen::MatrixXd& centroids) {
  const Eigen::VectorXd pn = points.rowwise().squaredNorm();
  const Eigen::VectorXd cn = centroids.rowwise().squaredNorm();
  Eigen::MatrixXd d = -2.0 * points * centroids.transpose();
  d.colwise() += pn;
  d.rowwise() += cn.transpose();
  return d.cwiseMax(0.0);
}

Eigen::MatrixXd SeedPlusPlus(const Eigen::MatrixXd& points, int k, Rng& rng) {
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd centroids(k, points.cols());
  std::vector<bool> chosen(n, false);
  Eigen::Index first = static_cast<Eigen::Index>(rng.UniformInt(n));
  centroids.row(0) = points.row(first);
  chosen[first] = true;
  Eigen::VectorXd best = (points.rowwise() - points.row(first)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = best.sum();
    Eigen::Index pick = -1;
    if (total > 0.0) {
      double target = rng.UniformDouble() * total;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (best[i] <= 0.0) continue;
        target -= best[i];
        pick = i;
        if (target < 0.0) break;
      }
    }
    if (pick < 0) {
      // All remaining mass is zero (duplicate points): take any unchosen one.
      std::vector<Eigen::Index> free;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!chosen[i]) free.push_back(i);
      }
      pick = free[rng.UniformInt(free.size())];
    }
    chosen[pick] = true;
    centroids.row(c) = points.row(pick);
    best = best.cwiseMin(
        (points.rowwise() - points.row(pick)).rowwise().squaredNorm());
  }
  return centroids;
}

void UpdateCentroids(const Eigen::MatrixXd& points, std::vector<int>& assignment,
                     Eigen::MatrixXd& centroids) {
  const int k = static_cast<int>(centroids.rows());
  for (;;) {
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
    std::vector<int> counts(k, 0);
    for (size_t i = 0; i < assignment.size(); ++i) {
      sums.row(assignment[i]) += points.row(static_cast<Eigen::Index>(i));
      ++counts[assignment[i]];
    }
    int empty = -1;
    for (int c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        empty = c;
        continue;
      }
      centroids.row(c) = sums.row(c) / counts[c];
    }
    if (empty < 0) return;
    // Re-seed the empty cluster from the point farthest from its centroid,
    // taken from a cluster that can spare it.
    double worst = -1.0;
    Eigen::Index far = -1;
    for (size_t i = 0; i < assignment.size(); ++i) {
      if (counts[assignment[i]] < 2) continue;
      const double d = (points.row(static_cast<Eigen::Index>(i)) -
                        centroids.row(assignment[i])).squaredNorm();
      if (d > worst) {
        worst = d;
        far = static_cast<Eigen::Index>(i);
      }
    }
    assignment[far] = empty;
  }
}

// One pass of single-point transfers (Hartigan's criterion). Returns true if
// any point moved.
bool TransferPass(const Eigen::MatrixXd& points, std::vector<int>& assignment,
                  Eigen::MatrixXd& centroids) {
  const int k = static_cast<int>(centroids.rows());
  std::vector<int> counts(k, 0);
  for (int a : assignment) ++counts[a];
  bool moved = false;
  for (size_t i = 0; i < assignment.size(); ++i) {
    const int from = assignment[i];
    if (counts[from] < 2) continue;
    const auto x = points.row(static_cast<Eigen::Index>(i));
    const double nf = counts[from];
    const double remove_gain =
        nf / (nf - 1.0) * (x - centroids.row(from)).squaredNorm();
    double best_delta = 0.0;
    int best = -1;
    for (int c = 0; c < k; ++c) {
      if (c == from) continue;
      const double nc = counts[c];
      const double delta =
          nc / (nc + 1.0) * (x - centroids.row(c)).squaredNorm() - remove_gain;
      if (delta < best_delta - 1e-12 * (1.0 + remove_gain)) {
        best_delta = delta;
        best = c;
      }
    }
    if (best < 0) continue;
    const double nt = counts[best];
    centroids.row(from) = (centroids.row(from) * nf - x) / (nf - 1.0);
    centroids.row(best) = (centroids.row(best) * nt + x) / (nt + 1.0);
    --counts[from];
    ++counts[best];
    assignment[i] = best;
    moved = true;
  }
  return moved;
}

}  // namespace

double WithinClusterCost(const Eigen::MatrixXd& points,
                         const std::vector<int>& assignment, int k) {
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
  std::vector<int> counts(k, 0);
  for (size_t i = 0; i < assignment.size(); ++i) {
    sums.row(assignment[i]) += points.row(static_cast<Eigen::Index>(i));
    ++counts[assignment[i]];
  }
  double cost = 0.0;
  for (size_t i = 0; i < assignment.size(); ++i) {
    const int c = assignment[i];
    cost += (points.row(static_cast<Eigen::Index>(i)) - sums.row(c) / counts[c])
                .squaredNorm();
  }
  return cost;
}

KMeansModel KMeansFit(const Eigen::MatrixXd& points, int k, uint64_t seed,
                      KMeansOptions options) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "K must be >= 1");
  if (points.cols() < 1) throw Error(ErrorCode::kInvalidArgument, "d must be >= 1");
  if (points.rows() < k) {
    throw Error(ErrorCode::kTooFewPoints,
                "K=" + std::to_string(k) + " exceeds " +
                    std::to_string(points.rows()) + " points");
  }
  Rng rng(seed);
  KMeansModel model;
  model.centroids = SeedPlusPlus(points, k, rng);
  model.assignment.assign(points.rows(), -1);

  for (int iter = 0; iter < options.max_iter; ++iter) {
    ++model.iterations;
    const Eigen::MatrixXd dist = SquaredDistances(points, model.centroids);
    bool changed = false;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      Eigen::Index best;
      dist.row(i).minCoeff(&best);
      if (model.assignment[i] != static_cast<int>(best)) {
        model.assignment[i] = static_cast<int>(best);
        changed = true;
      }
    }
    UpdateCentroids(points, model.assignment, model.centroids);
    if (!changed && options.refine) {
      changed = TransferPass(points, model.assignment, model.centroids);
      if (changed) UpdateCentroids(points, model.assignment, model.centroids);
    }
    model.cost_history.push_back(WithinClusterCost(points, model.assignment, k));
    if (!changed) break;
  }
  return model;
}

void KMeansModel::SaveCentroids(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out.precision(17);
  out << "# cluster\tcentroid coordinates\n";
  for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
    out << 'K' << c;
    for (Eigen::Index j = 0; j < centroids.cols(); ++j) out << '\t' << centroids(c, j);
    out << '\n';
  }
}

void KMeansModel::SaveAssignment(const std::string& path,
                                 const std::vector<std::string>& units) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  for (size_t i = 0; i < assignment.size(); ++i) {
    out << (i < units.size() ? units[i] : std::to_string(i)) << "\tK"
        << assignment[i] << '\n';
  }
}

}  // namespace pnmt
