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

// Random clustering of translation units and the K-Means baseline.
//
// Random clustering partitions a unit vocabulary into clusters whose sizes
// copy the code multiplicities of a baseline encoding: if Metaphone maps
// three units to one code, some random cluster gets three uniformly sampled
// units. The result is then used as an encoding in its own right.

#ifndef PNMT_CLUSTERING_H_
#define PNMT_CLUSTERING_H_

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pnmt/codecs.h"
#include "pnmt/text.h"

namespace pnmt {

inline constexpr std::string_view kUnknownCluster = "G_UNK";

// Group sizes of a baseline encoding, one entry per distinct code, in the
// order of the sorted codes.
struct SizeDistribution {
  std::vector<size_t> multiplicities;

  size_t Total() const;
};

// Groups `units` by encoder.UnitKey() and returns the group sizes.
// Non-alphabetic units form their own singleton groups (pass-through key).
SizeDistribution DeriveSizeDistribution(const std::vector<std::string>& units,
                                        const Encoder& encoder);

enum class ClusterSource { kBaselineDerived, kUniform };

class ClusterModel {
 public:
  ClusterModel() = default;
  ClusterModel(std::map<std::string, std::string, std::less<>> assignment,
               uint64_t seed, ClusterSource source, size_t num_clusters)
      : assignment_(std::move(assignment)),
        seed_(seed),
        source_(source),
        num_clusters_(num_clusters) {}

  // Cluster id ("G1", "G2", ...) or kUnknownCluster.
  std::string_view Lookup(std::string_view unit) const;

  const std::map<std::string, std::string, std::less<>>& assignment() const {
    return assignment_;
  }
  uint64_t seed() const { return seed_; }
  ClusterSource source() const { return source_; }
  size_t num_clusters() const { return num_clusters_; }

  // Cluster sizes indexed by cluster number - 1.
  std::vector<size_t> ClusterSizes() const;

  // TSV `unit<TAB>cluster_id` with '#' metadata header lines.
  void Save(const std::string& path) const;
  static ClusterModel Load(const std::string& path);

 private:
  std::map<std::string, std::string, std::less<>> assignment_;
  uint64_t seed_ = 0;
  ClusterSource source_ = ClusterSource::kBaselineDerived;
  size_t num_clusters_ = 0;
};

// Units are deduplicated-checked and sorted before sampling, so the result
// only depends on the unit *set*, the distribution and the seed. Cluster
// G<i> receives multiplicities[i-1] units.
ClusterModel RandomCluster(const std::vector<std::string>& units,
                           const SizeDistribution& dist, uint64_t seed);

// K = round(fraction * |units|) clusters whose sizes differ by at most one.
ClusterModel RandomClusterUniform(const std::vector<std::string>& units,
                                  double fraction, uint64_t seed);

// Sizes used by RandomClusterUniform, larger clusters first.
std::vector<size_t> UniformClusterSizes(size_t num_units, double fraction);

Sentence EncodeWithClusters(const Sentence& sentence, const ClusterModel& model);

// Encoder adapter so a cluster model plugs into the pipeline.
class ClusterEncoder : public Encoder {
 public:
  explicit ClusterEncoder(ClusterModel model) : model_(std::move(model)) {}

  std::vector<std::string> Encode(std::string_view token) const override {
    return {std::string(model_.Lookup(token))};
  }
  std::string Name() const override { return "random-cluster"; }

  const ClusterModel& model() const { return model_; }

 private:
  ClusterModel model_;
};

struct KMeansOptions {
  int max_iter = 100;
  // Single-point transfer passes after Lloyd converges; they escape the
  // local minima Lloyd cannot (e.g. a 3+1 split of a square's corners).
  bool refine = true;
};

struct KMeansModel {
  Eigen::MatrixXd centroids;     // K x d
  std::vector<int> assignment;   // point index -> cluster
  std::vector<double> cost_history;  // within-cluster SSE per iteration
  int iterations = 0;

  double Cost() const { return cost_history.empty() ? 0.0 : cost_history.back(); }

  void SaveCentroids(const std::string& path) const;
  void SaveAssignment(const std::string& path,
                      const std::vector<std::string>& units) const;
};

// Lloyd's algorithm from k-means++ seeding. `points` is n x d.
KMeansModel KMeansFit(const Eigen::MatrixXd& points, int k, uint64_t seed,
                      KMeansOptions options = {});

// Sum of squared distances from each point to its cluster mean.
double WithinClusterCost(const Eigen::MatrixXd& points,
                         const std::vector<int>& assignment, int k);

}  // namespace pnmt

#endif  // PNMT_CLUSTERING_H_
