#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "lensdepth/datasets.hpp"
#include "lensdepth/depth.hpp"
#include "lensdepth/error.hpp"
#include "lensdepth/parallel.hpp"
#include "oracles.hpp"

namespace lensdepth {
namespace {

using V = std::vector<double>;

TEST(LensDepth, MidpointOfTwoPoints) {
  const auto g = build_fermat_graph(PointSet(2, 1, {0, 2}), 1.0);
  EXPECT_EQ(lens_depth(g, V{1}), 1.0);
  EXPECT_EQ(lens_depth(g, V{2.5}), 0.0);
}

TEST(LensDepth, ClosedBallsCountTheBoundary) {
  // x at distance exactly 2 from both ends of a pair 2 apart.
  const auto g = build_fermat_graph(PointSet(2, 2, {0, 0, 2, 0}), 1.0);
  EXPECT_EQ(lens_depth(g, V{1, std::sqrt(3.0)}), 1.0);
  EXPECT_EQ(lens_depth(g, V{0, 0}), 1.0);
}

TEST(LensDepth, ZeroBeyondEveryRadius) {
  const PointSet q = oracle::random_points(30, 2, 51);
  const auto g = build_fermat_graph(q, 3.0);
  const double max_radius = g.pairwise().max_entry();
  const V far{50, 50};
  EXPECT_GT(fermat_edge_weight(nearest_particle(far, q).distance, 3.0), max_radius);
  EXPECT_EQ(lens_depth(g, far), 0.0);
}

TEST(LensDepth, MatchesPairEnumeration) {
  const PointSet q = oracle::random_points(30, 2, 52);
  const auto g = build_fermat_graph(q, 3.0);
  const auto full = oracle::floyd_warshall(q, 3.0);
  std::mt19937_64 gen(53);
  for (int t = 0; t < 50; ++t) {
    const auto x = oracle::random_vector(2, gen, -0.2, 1.2);
    const auto dx = modified_fermat_to_all(g, x);
    EXPECT_EQ(lens_count(g, x), oracle::lens_pairs(full, 30, dx));
    EXPECT_EQ(lens_depth(g, x), static_cast<double>(oracle::lens_pairs(full, 30, dx)) / 435.0);
  }
}

TEST(LensDepth, InUnitIntervalAndOrderInvariant) {
  const PointSet q = oracle::random_points(25, 2, 54);
  std::vector<std::size_t> perm(25);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(55));
  const auto g = build_fermat_graph(q, 4.0);
  const auto gp = build_fermat_graph(q.select(perm), 4.0);
  std::mt19937_64 gen(56);
  for (int t = 0; t < 100; ++t) {
    const auto x = oracle::random_vector(2, gen, -0.5, 1.5);
    const double ld = lens_depth(g, x);
    EXPECT_GE(ld, 0.0);
    EXPECT_LE(ld, 1.0);
    for (auto mode : {DistanceMode::kModified, DistanceMode::kUnmodified}) {
      EXPECT_EQ(lens_count(g, x, mode), lens_count(gp, x, mode));
    }
  }
}

TEST(LensDepth, UnmodifiedIsConstantOnVoronoiCells) {
  const PointSet q = two_moons(300, 0.07, 3).without_labels();
  const auto g = build_fermat_graph(q, 7.0);
  std::mt19937_64 gen(57);
  bool modified_differs = false;
  for (int t = 0; t < 300; ++t) {
    const auto x = oracle::random_vector(2, gen, -1.5, 2.5);
    const auto snap = q.row(nearest_particle(x, q).index);
    EXPECT_EQ(lens_depth(g, x, DistanceMode::kUnmodified), lens_depth(g, snap, DistanceMode::kUnmodified));
    if (lens_depth(g, x) != lens_depth(g, snap)) modified_differs = true;
  }
  EXPECT_TRUE(modified_differs);
}

TEST(LensDepth, NeedsTwoPoints) {
  EXPECT_THROW(lens_count_from_distances(DistanceMatrix(2, {1.0}), V{1.0}), UsageError);
}

TEST(Fit, OneClusterPerClass) {
  const auto s = fit(two_moons(200, 0.07, 1), {.alpha = 7.0});
  ASSERT_EQ(s.clusters().size(), 2u);
  EXPECT_EQ(s.clusters()[0].class_id, 0u);
  EXPECT_EQ(s.clusters()[1].class_id, 1u);
  EXPECT_EQ(s.alpha(), 7.0);
}

TEST(Fit, StrategyNoneKeepsEveryPoint) {
  const auto data = two_moons(200, 0.07, 1);
  FitOptions o;
  o.strategy.kind = StrategyKind::kNone;
  const auto s = fit(data, o);
  std::vector<std::size_t> class0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.labels()[i] == 0) class0.push_back(i);
  }
  EXPECT_EQ(s.clusters()[0].graph.points(), data.select(class0).without_labels());
}

TEST(Fit, ReducedInnerPointCount) {
  FitOptions o;
  o.strategy = {StrategyKind::kKMeanCenter, 40, 3};
  const auto s = fit(two_moons(200, 0.07, 1), o);
  for (const auto& c : s.clusters()) EXPECT_EQ(c.graph.size(), 40u);
}

TEST(Fit, Errors) {
  EXPECT_THROW(fit(PointSet(3, 1, {0, 1, 2}), {}), UsageError);
  EXPECT_THROW(fit(PointSet(3, 1, {0, 1, 2}, std::vector<ClassId>{0, 0, 1}), {}), UsageError);
  EXPECT_THROW(fit(two_moons(20, 0.0, 1), {.alpha = 0.5}), UsageError);
}

TEST(Score, DeepInOneClusterIgnoresTheOther) {
  const auto data = gaussians3(60, 0.5, 4);
  const auto s = fit(data, {.alpha = 3.0});
  const V center{0.0, 0.0};
  const auto depths = s.cluster_depths(center);
  EXPECT_GT(depths[0], 0.0);
  EXPECT_EQ(depths[1], 0.0);
  EXPECT_EQ(depths[2], 0.0);
  EXPECT_EQ(score(s, center), depths[0]);
  EXPECT_EQ(score(s, V{100, 100}), 0.0);
  EXPECT_THROW(score(s, V{1, 2, 3}), UsageError);
}

TEST(Score, MidpointBetweenClustersScoresBelowCenter) {
  const auto data = gaussians3(100, 1.0, 5);
  const auto s = fit(data, {.alpha = 7.0});
  const auto c = default_gaussian_centers(1.0);
  const V mid{(c[0][0] + c[1][0]) / 2, (c[0][1] + c[1][1]) / 2};
  for (const auto& center : c) EXPECT_LT(score(s, mid), score(s, V{center[0], center[1]}));
}

TEST(Score, InvariantUnderClassRelabeling) {
  auto data = gaussians3(50, 1.0, 6);
  std::vector<ClassId> relabeled = data.labels();
  for (auto& l : relabeled) l = 7 - 3 * l;  // 0,1,2 -> 7,4,1
  const PointSet other(data.size(), 2, V(data.data().begin(), data.data().end()), relabeled);
  FitOptions o{.alpha = 5.0};
  o.strategy.kind = StrategyKind::kNone;
  const auto a = fit(data, o);
  const auto b = fit(other, o);
  std::mt19937_64 gen(58);
  for (int t = 0; t < 50; ++t) {
    const auto x = oracle::random_vector(2, gen, -3, 13);
    EXPECT_EQ(score(a, x), score(b, x));
  }
}

TEST(Score, NormalizationAppliedToQueries) {
  const PointSet data = two_moons(100, 0.05, 2);
  // Shift away from the origin so every row can be normalised.
  V shifted(data.data().begin(), data.data().end());
  for (std::size_t i = 0; i < shifted.size(); i += 2) shifted[i] += 5.0;
  const PointSet p(data.size(), 2, shifted, data.labels());
  FitOptions o;
  o.normalize = true;
  const auto s = fit(p, o);
  const V x{5.5, 0.3};
  EXPECT_EQ(score(s, x), score(s, V{11.0, 0.6}));
}

TEST(ScoreBatch, MatchesSequentialLoop) {
  const auto s = fit(two_moons(200, 0.07, 1), {});
  const PointSet queries = oracle::random_points(10000, 2, 59, -1.5, 2.5);
  const auto batch = score_batch(s, queries);
  for (std::size_t i = 0; i < queries.size(); ++i) ASSERT_EQ(batch[i], score(s, queries.row(i)));

  const auto one = score_batch(s, queries.select(std::vector<std::size_t>{17}));
  EXPECT_EQ(one, V{score(s, queries.row(17))});

  std::vector<std::size_t> perm(200);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::reverse(perm.begin(), perm.end());
  const auto reversed = score_batch(s, queries.select(perm));
  for (std::size_t i = 0; i < 200; ++i) EXPECT_EQ(reversed[i], batch[199 - i]);
}

TEST(ScoreBatch, ThreadCountDoesNotChangeScores) {
  const auto s = fit(two_moons(200, 0.07, 1), {});
  const PointSet queries = oracle::random_points(300, 2, 60, -1.5, 2.5);
  set_thread_count(1);
  const auto a = score_batch(s, queries);
  set_thread_count(3);
  const auto b = score_batch(s, queries);
  set_thread_count(0);
  EXPECT_EQ(a, b);
}

TEST(Determinism, SameInputsSameScorer) {
  FitOptions o;
  o.strategy = {StrategyKind::kKMeanCenter, 50, 11};
  const auto data = two_moons(300, 0.07, 1);
  EXPECT_EQ(fit(data, o), fit(data, o));
  o.strategy.kind = StrategyKind::kRandom;
  EXPECT_EQ(fit(data, o), fit(data, o));
}

TEST(Persistence, SaveLoadRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "lensdepth_depth_model";
  std::filesystem::remove_all(dir);
  FitOptions o;
  o.strategy = {StrategyKind::kKMeanCenterPlus, 60, 5};
  const auto s = fit(two_moons(300, 0.07, 1), o);
  save_scorer(dir, s, R"({"note":"x"})");
  EXPECT_TRUE(std::filesystem::exists(dir / "model.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "class_0.ldgraf"));
  const auto back = load_scorer(dir);
  EXPECT_EQ(back, s);
  EXPECT_THROW(load_scorer(dir / "missing"), IoError);
}

}  // namespace
}  // namespace lensdepth
