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


#include <gtest/gtest.h>

#include <Eigen/SVD>

#include <cmath>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "oracles.h"
#include "pnmt/error.h"
#include "pnmt/geometry.h"
#include "pnmt/rng.h"

namespace pnmt {
namespace {

std::string WriteTemp(const std::string& name, const std::string& text) {
  const std::string path = testing::TempDir() + "/" + name;
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::kInvalidArgument;
}

double Cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.dot(b) / (a.norm() * b.norm());
}

std::vector<Point2> Square(double side, double x0 = 0, double y0 = 0) {
  return {{x0, y0}, {x0 + side, y0}, {x0 + side, y0 + side}, {x0, y0 + side}};
}

// --- embeddings -------------------------------------------------------------

TEST(LoadEmbeddingsTest, ParsesAndInfersDimension) {
  const EmbeddingTable t = LoadEmbeddings(WriteTemp("e1.vec", "a 1 2\nb 3 4\nc 5 6.5\n"));
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(t.dimension(), 2);
  EXPECT_DOUBLE_EQ(t.Vector("c")[1], 6.5);
  EXPECT_EQ(t.IndexOf("zzz"), -1);
}

TEST(LoadEmbeddingsTest, Errors) {
  EXPECT_EQ(CodeOf([] { LoadEmbeddings(WriteTemp("e2.vec", "a 1 2\nb 3\n")); }),
            ErrorCode::kDimensionMismatch);
  EXPECT_EQ(CodeOf([] { LoadEmbeddings(WriteTemp("e3.vec", "a 1 x\n")); }),
            ErrorCode::kMalformedFloat);
  EXPECT_EQ(CodeOf([] { LoadEmbeddings(WriteTemp("e4.vec", "a 1 nan\n")); }),
            ErrorCode::kMalformedFloat);
  EXPECT_EQ(CodeOf([] { LoadEmbeddings(WriteTemp("e5.vec", "")); }), ErrorCode::kEmptyEmbedding);
}

TEST(LoadEmbeddingsTest, DuplicateLastWins) {
  Diagnostics diag;
  const EmbeddingTable t = LoadEmbeddings(WriteTemp("e6.vec", "a 1 2\nb 3 4\na 7 8\n"), &diag);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_DOUBLE_EQ(t.Vector("a")[0], 7.0);
  EXPECT_EQ(diag.warnings.size(), 1u);
}

TEST(LoadEmbeddingsTest, SaveRoundTrip) {
  Eigen::MatrixXd v(2, 3);
  v << 0.1, -2.5e-7, 3, 1.0 / 3.0, 4, 5;
  const EmbeddingTable t({"x", "y"}, v);
  const std::string path = testing::TempDir() + "/rt.vec";
  t.Save(path);
  EXPECT_EQ(LoadEmbeddings(path).vectors(), v);
}

TEST(TruncatedSvdTest, MatchesFullSvd) {
  Rng rng(4);
  // Rank 12 fits inside the sketch, so the truncation is exact.
  Eigen::MatrixXd left(40, 12), right(12, 25);
  for (Eigen::Index i = 0; i < left.size(); ++i) left(i) = rng.Gaussian();
  for (Eigen::Index i = 0; i < right.size(); ++i) right(i) = rng.Gaussian();
  const Eigen::MatrixXd a = left * right;
  const SvdResult r = TruncatedSvd(a, 5, 9);
  Eigen::JacobiSVD<Eigen::MatrixXd> full(a);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(r.sigma[i], full.singularValues()[i], 1e-8);
  EXPECT_TRUE((r.u.transpose() * r.u).isIdentity(1e-9));
  const SvdResult again = TruncatedSvd(a, 5, 9);
  EXPECT_EQ(again.u, r.u);
}

TEST(PpmiTest, FullRankReconstruction) {
  Corpus c;
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    Sentence s;
    for (int j = 0; j < 8; ++j) s.push_back("w" + std::to_string(rng.UniformInt(12)));
    c.push_back(s);
  }
  const PpmiMatrix m = BuildPpmi(c, 2);
  const Eigen::MatrixXd dense(m.values);
  EXPECT_TRUE(dense.isApprox(dense.transpose(), 1e-12));
  EXPECT_GE(dense.minCoeff(), 0.0);
  const int n = static_cast<int>(m.vocabulary.size());
  const SvdResult r = TruncatedSvd(m.values, n, 3);
  const Eigen::MatrixXd back = r.u * r.sigma.asDiagonal() * r.v.transpose();
  EXPECT_LT((back - dense).norm(), 1e-8 * std::max(1.0, dense.norm()));
}

TEST(TrainEmbeddingsTest, IdenticalContextsAndRankWarning) {
  Corpus c;
  for (int i = 0; i < 20; ++i) {
    c.push_back({"x", "a", "y"});
    c.push_back({"x", "b", "y"});
    c.push_back({"p", "x", "q"});
    c.push_back({"q", "y", "p"});
  }
  Diagnostics diag;
  const EmbeddingTable t = TrainEmbeddings(c, {100, 1, 7, 0}, &diag);
  EXPECT_EQ(t.dimension(), 6);
  ASSERT_EQ(diag.warnings.size(), 1u);
  EXPECT_NE(diag.warnings[0].find("RankDeficient"), std::string::npos);
  EXPECT_GT(Cosine(t.Vector("a"), t.Vector("b")), 0.99);
}

TEST(TrainEmbeddingsTest, TopicsSeparate) {
  Corpus c;
  Rng rng(12);
  for (int i = 0; i < 600; ++i) {
    const char topic = i % 2 == 0 ? 'a' : 'b';
    Sentence s;
    for (int j = 0; j < 6; ++j) s.push_back(std::string(1, topic) + std::to_string(rng.UniformInt(6)));
    c.push_back(s);
  }
  const EmbeddingTable t = TrainEmbeddings(c, {4, 2, 1, 0});
  double within = 0, cross = 0;
  int nw = 0, nc = 0;
  for (size_t i = 0; i < t.size(); ++i) {
    for (size_t j = i + 1; j < t.size(); ++j) {
      const double cs = Cosine(t.vectors().row(i), t.vectors().row(j));
      if (t.units()[i][0] == t.units()[j][0]) {
        within += cs;
        ++nw;
      } else {
        cross += cs;
        ++nc;
      }
    }
  }
  EXPECT_GT(within / nw, cross / nc);
}

TEST(TrainEmbeddingsTest, Errors) {
  EXPECT_EQ(CodeOf([] { TrainEmbeddings({}, {}); }), ErrorCode::kEmptyCorpus);
  EXPECT_EQ(CodeOf([] { TrainEmbeddings({{"a", "b"}}, {1, 2, 0, 0}); }),
            ErrorCode::kInvalidArgument);
}

// --- projection -------------------------------------------------------------

TEST(PcaTest, IsometricRecoveryOfPlanarData) {
  Rng rng(21);
  const int n = 30;
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, 6);
  std::vector<std::string> units;
  for (int i = 0; i < n; ++i) {
    v(i, 2) = 3.0 * rng.Gaussian();
    v(i, 4) = rng.Gaussian();
    units.push_back("u" + std::to_string(i));
  }
  const EmbeddingTable t(units, v);
  const ProjectedTable p = PcaProject(t);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Point2& a = p.points.at(units[i]);
      const Point2& b = p.points.at(units[j]);
      EXPECT_NEAR(std::hypot(a.x - b.x, a.y - b.y), (v.row(i) - v.row(j)).norm(), 1e-9);
    }
  }
  EXPECT_GE(p.variance[0], p.variance[1]);
  const Eigen::MatrixXd& comp = p.projection.components;
  EXPECT_TRUE((comp * comp.transpose()).isIdentity(1e-9));
  const Point2 origin = p.projection.Project(p.projection.mean);
  EXPECT_NEAR(origin.x, 0.0, 1e-12);
  EXPECT_NEAR(origin.y, 0.0, 1e-12);
}

TEST(PcaTest, LineHasNoSecondVariance) {
  Eigen::MatrixXd v(5, 3);
  for (int i = 0; i < 5; ++i) v.row(i) << i, 2.0 * i, -i;
  const ProjectedTable p = PcaProject(EmbeddingTable({"a", "b", "c", "d", "e"}, v));
  EXPECT_NEAR(p.variance[1], 0.0, 1e-12);
  EXPECT_GT(p.variance[0], 0.0);
}

TEST(PcaTest, FirstComponentBeatsEveryAxis) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd v(5, 4);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.Gaussian();
    const ProjectedTable p = PcaProject(EmbeddingTable({"a", "b", "c", "d", "e"}, v));
    const Eigen::MatrixXd centered = v.rowwise() - v.colwise().mean();
    for (int axis = 0; axis < 4; ++axis) {
      EXPECT_GE(p.variance[0] + 1e-12, centered.col(axis).squaredNorm() / 5.0);
    }
  }
}

TEST(PcaTest, Degenerate) {
  Eigen::MatrixXd same = Eigen::MatrixXd::Ones(4, 3);
  EXPECT_EQ(CodeOf([&] { PcaProject(EmbeddingTable({"a", "b", "c", "d"}, same)); }),
            ErrorCode::kDegenerateData);
  Eigen::MatrixXd two(2, 2);
  two << 0, 1, 1, 0;
  EXPECT_EQ(CodeOf([&] { PcaProject(EmbeddingTable({"a", "b"}, two)); }),
            ErrorCode::kDegenerateData);
}

// --- hulls ------------------------------------------------------------------

TEST(HullTest, SquareAndTriangle) {
  const HullMetrics sq = SmoothHull(Square(1.0), HullParams{0.1, 1.0});
  EXPECT_DOUBLE_EQ(sq.volume, 1.0);
  EXPECT_EQ(sq.removed_outliers, 0u);
  EXPECT_DOUBLE_EQ(SmoothHull({{0, 0}, {1, 0}, {0, 1}}, std::nullopt).volume, 0.5);
}

TEST(HullTest, OutlierRemoved) {
  std::vector<Point2> pts = Square(1.0);
  pts.push_back({50, 50});
  const HullMetrics h = SmoothHull(pts, HullParams{1.0, 1.0});
  EXPECT_DOUBLE_EQ(h.volume, 1.0);
  EXPECT_EQ(h.removed_outliers, 1u);
  EXPECT_DOUBLE_EQ(SmoothHull(pts, std::nullopt).volume > 1.0, true);
}

TEST(HullTest, VerticesCounterClockwiseAndConvex) {
  Rng rng(2);
  std::vector<Point2> pts;
  for (int i = 0; i < 200; ++i) pts.push_back({rng.Gaussian(), rng.Gaussian()});
  const std::vector<Point2> hull = ConvexHull(pts);
  ASSERT_GE(hull.size(), 3u);
  for (size_t i = 0; i < hull.size(); ++i) {
    const Point2& a = hull[i];
    const Point2& b = hull[(i + 1) % hull.size()];
    const Point2& c = hull[(i + 2) % hull.size()];
    EXPECT_GT((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x), 0.0);
  }
}

TEST(HullTest, DegenerateAndErrors) {
  const HullMetrics line = SmoothHull({{0, 0}, {1, 1}, {2, 2}}, std::nullopt);
  EXPECT_TRUE(line.degenerate);
  EXPECT_EQ(line.volume, 0.0);
  EXPECT_EQ(CodeOf([] { SmoothHull({{0, 0}, {10, 10}}, HullParams{1.0, 1.0}); }),
            ErrorCode::kAllPointsRemoved);
  EXPECT_EQ(CodeOf([] { SmoothHull({{0, 0}}, HullParams{0.0, 1.0}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { SmoothHull({}, std::nullopt); }), ErrorCode::kInvalidArgument);
}

TEST(HullTest, BetaSemantics) {
  HullParams frac{0.3, 1.0};
  EXPECT_DOUBLE_EQ(frac.Threshold(10), 3.0);
  HullParams count{2.0, 1.0};
  EXPECT_DOUBLE_EQ(count.Threshold(10), 2.0);
}

TEST(HullTest, MatchesBruteForce) {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Point2> pts;
    const size_t n = 1 + rng.UniformInt(8);
    for (size_t i = 0; i < n; ++i) pts.push_back({rng.UniformDouble() * 10, rng.UniformDouble() * 10});
    EXPECT_NEAR(SmoothHull(pts, std::nullopt).volume, oracle::BruteForceHullArea(pts), 1e-9);
  }
}

// --- coverage and CDF ---------------------------------------------------------

TEST(CoverageTest, Examples) {
  const auto one = CoverageCurve({Square(2.0)}, 1, std::nullopt);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_DOUBLE_EQ(one[0].second, 4.0);
  const auto twin = CoverageCurve({Square(1.0), Square(1.0)}, 1, std::nullopt);
  EXPECT_DOUBLE_EQ(twin[0].second, twin[1].second);
  // Inner unit square first, then the side-2 square around it.
  bool checked = false;
  for (uint64_t seed = 0; seed < 20 && !checked; ++seed) {
    const std::vector<PointGroup> groups = {Square(1.0, 0.5, 0.5), Square(2.0)};
    const auto curve = CoverageCurve(groups, seed, std::nullopt);
    if (curve[0].second == 1.0) {
      EXPECT_DOUBLE_EQ(curve[1].second, 4.0);
      checked = true;
    }
  }
  EXPECT_TRUE(checked);
}

TEST(CoverageTest, MonotoneWithoutSmoothing) {
  Rng rng(6);
  std::vector<PointGroup> groups(30);
  for (PointGroup& g : groups) {
    const size_t n = 1 + rng.UniformInt(5);
    for (size_t i = 0; i < n; ++i) g.push_back({rng.Gaussian(), rng.Gaussian()});
  }
  const auto curve = CoverageCurve(groups, 77, std::nullopt);
  ASSERT_EQ(curve.size(), groups.size());
  for (size_t t = 1; t < curve.size(); ++t) {
    EXPECT_EQ(curve[t].first, static_cast<int>(t + 1));
    EXPECT_GE(curve[t].second, curve[t - 1].second);
  }
  EXPECT_EQ(CoverageCurve(groups, 77, std::nullopt), curve);
}

TEST(VolumeCdfTest, Examples) {
  const auto singletons = VolumeCdf({{{0, 0}}, {{1, 1}}, {{2, 2}}}, std::nullopt);
  for (const auto& [v, f] : singletons) EXPECT_EQ(v, 0.0);
  EXPECT_DOUBLE_EQ(singletons.back().second, 1.0);
  const std::vector<PointGroup> groups = {Square(1.0), {{0, 0}, {1, 0}, {0, 1}}};
  const auto cdf = VolumeCdf(groups, std::nullopt);
  ASSERT_EQ(cdf.size(), 2u);
  EXPECT_DOUBLE_EQ(cdf[0].first, 0.5);
  EXPECT_DOUBLE_EQ(cdf[0].second, 0.5);
  EXPECT_DOUBLE_EQ(cdf[1].first, 1.0);
  EXPECT_DOUBLE_EQ(cdf[1].second, 1.0);
  EXPECT_DOUBLE_EQ(CdfQuantile(cdf, 0.5), 0.75);
}

// --- concentration factor -----------------------------------------------------

TEST(GammaTest, HandExample) {
  const GammaReport r = ConcentrationFactor({{{0, 0}, {2, 0}}, {{0, 2}, {2, 2}}});
  EXPECT_NEAR(r.gamma, 0.5, 1e-12);
  EXPECT_EQ(r.num_groups, 2u);
  EXPECT_DOUBLE_EQ(r.centroids[0].x, 1.0);
  EXPECT_DOUBLE_EQ(r.centroids[1].y, 2.0);
}

TEST(GammaTest, SingleGroupAndZeroDispersion) {
  EXPECT_EQ(ConcentrationFactor({{{0, 0}, {2, 0}, {5, 5}}}).gamma, 0.0);
  EXPECT_EQ(CodeOf([] { ConcentrationFactor({{{0, 0}, {0, 0}}, {{3, 3}}}); }),
            ErrorCode::kZeroDispersion);
}

// --- density ------------------------------------------------------------------

DensityOptions FixedBudget(size_t budget) {
  DensityOptions o;
  o.sample_budget = budget;
  o.threshold = 0.0;
  o.keep_samples = true;
  return o;
}

TEST(DensityTest, SingleReferenceMatchesDirectSum) {
  const std::vector<Point2> corners = Square(2.0);
  DensityOptions o = FixedBudget(500);
  o.max_neighbor = 1;
  const DensityReport r = DensityAgainstReference(corners, {{1, 1}}, 42, o);
  ASSERT_EQ(r.samples.size(), 500u);
  double sum = 0, max = 0;
  for (const Point2& s : r.samples) {
    const double d = std::hypot(s.x - 1, s.y - 1);
    sum += d;
    max = std::max(max, d);
  }
  EXPECT_NEAR(r.sum_density[0], sum, 1e-9);
  EXPECT_DOUBLE_EQ(r.max_density[0], max);
  EXPECT_NEAR(r.mean_density[0], sum / 500, 1e-12);
  for (const Point2& s : r.samples) {
    EXPECT_GE(s.x, 0.0);
    EXPECT_LE(s.x, 2.0);
  }
}

TEST(DensityTest, MonotoneInNeighbourIndex) {
  Rng rng(8);
  std::vector<Point2> all;
  std::vector<PointGroup> groups(12);
  for (size_t g = 0; g < groups.size(); ++g) {
    for (int i = 0; i < 6; ++i) {
      const Point2 p{rng.Gaussian() + static_cast<double>(g % 4), rng.Gaussian()};
      groups[g].push_back(p);
      all.push_back(p);
    }
  }
  const DensityReport r = DensityMeasure(all, groups, std::nullopt, 3);
  ASSERT_EQ(r.max_density.size(), 3u);
  for (int i = 1; i < 3; ++i) {
    EXPECT_LE(r.max_density[i - 1], r.max_density[i]);
    EXPECT_LE(r.sum_density[i - 1], r.sum_density[i]);
  }
  EXPECT_EQ(r.chosen_groups.size(), 5u);
  EXPECT_EQ(r.reference_size, 30u);
  EXPECT_TRUE(r.converged);
  const DensityReport again = DensityMeasure(all, groups, std::nullopt, 3);
  EXPECT_EQ(again.sum_density, r.sum_density);
}

TEST(DensityTest, DenserReferenceShrinksMaxDistance) {
  const std::vector<Point2> corners = Square(1.0);
  double previous = std::numeric_limits<double>::infinity();
  for (int res : {2, 4, 8, 16, 32}) {
    std::vector<Point2> ref;
    for (int i = 0; i <= res; ++i) {
      for (int j = 0; j <= res; ++j) ref.push_back({double(i) / res, double(j) / res});
    }
    DensityOptions o = FixedBudget(300);
    o.max_neighbor = 1;
    const DensityReport r = DensityAgainstReference(corners, ref, 5, o);
    EXPECT_LE(r.max_density[0], previous);
    EXPECT_LE(r.max_density[0], std::sqrt(0.5) / res + 1e-12);
    previous = r.max_density[0];
  }
}

TEST(DensityTest, Errors) {
  std::vector<PointGroup> groups(4, PointGroup{{0, 0}, {1, 1}, {0, 1}});
  EXPECT_EQ(CodeOf([&] { DensityMeasure(Square(1.0), groups, std::nullopt, 1); }),
            ErrorCode::kInsufficientGroups);
}

// --- grouping -------------------------------------------------------------------

TEST(GroupPointsTest, Examples) {
  const std::map<std::string, Point2> pts = {{"body", {0, 0}}, {"but", {1, 0}}, {"bad", {0, 1}}};
  const GroupedPoints g = GroupPoints(pts, {{"body", "B300"}, {"but", "B300"}, {"bad", "B300"}});
  ASSERT_EQ(g.keys, (std::vector<std::string>{"B300"}));
  EXPECT_EQ(g.groups[0].size(), 3u);
  const GroupedPoints b = GroupPoints(pts, {{"body", "1"}, {"but", "2"}, {"bad", "3"}, {"gone", "4"}});
  EXPECT_EQ(b.groups.size(), 3u);
  EXPECT_EQ(b.missing, 1u);
}

}  // namespace
}  // namespace pnmt
