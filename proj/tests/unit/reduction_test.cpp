#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "lensdepth/datasets.hpp"
#include "lensdepth/error.hpp"
#include "lensdepth/kmeans.hpp"
#include "lensdepth/reduction.hpp"
#include "oracles.hpp"

namespace lensdepth {
namespace {

using V = std::vector<double>;

std::set<V> rows_of(const PointSet& p) {
  std::set<V> s;
  for (std::size_t i = 0; i < p.size(); ++i) s.emplace(p.row(i).begin(), p.row(i).end());
  return s;
}

const PointSet kFourPoints(4, 2, {0, 0, 0, 1, 10, 0, 10, 1});

TEST(KMeans, SingleClusterIsMean) {
  const PointSet p(4, 2, {1, 2, 3, 4, 5, 6, 7, 9});
  const auto r = kmeans(p, 1, 100, 1);
  EXPECT_DOUBLE_EQ(r.centroids.row(0)[0], 4.0);
  EXPECT_DOUBLE_EQ(r.centroids.row(0)[1], 5.25);
}

TEST(KMeans, SeparatedPairs) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = kmeans(kFourPoints, 2, 100, seed);
    EXPECT_EQ(rows_of(r.centroids), (std::set<V>{{0, 0.5}, {10, 0.5}})) << "seed " << seed;
  }
}

TEST(KMeans, ObjectiveNeverIncreases) {
  const PointSet p = gaussians3(100, 1.0, 5).without_labels();
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t iters = 0; iters <= 12; ++iters) {
      const auto r = kmeans(p, 8, iters, seed);
      // Recompute the objective from scratch for the returned state.
      double wcss = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = oracle::naive_distance(p.row(i), r.centroids.row(r.assignment[i]));
        wcss += d * d;
      }
      EXPECT_LE(wcss, previous + 1e-9) << "iters " << iters;
      previous = wcss;
    }
  }
}

TEST(KMeans, AssignmentIsNearestCentroid) {
  const PointSet p = oracle::random_points(300, 3, 6);
  const auto r = kmeans(p, 10, 100, 7);
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_EQ(r.assignment[i], nearest_particle(p.row(i), r.centroids).index);
  }
}

TEST(KMeans, Deterministic) {
  const PointSet p = oracle::random_points(200, 4, 8);
  const auto a = kmeans(p, 12, 100, 9);
  const auto b = kmeans(p, 12, 100, 9);
  EXPECT_EQ(a.centroids, b.centroids);
  EXPECT_EQ(a.assignment, b.assignment);
}

TEST(KMeans, RangeErrors) {
  EXPECT_THROW(kmeans(kFourPoints, 0, 10, 1), UsageError);
  EXPECT_THROW(kmeans(kFourPoints, 5, 10, 1), UsageError);
}

TEST(KMeans, DuplicatePointsStillYieldKCentroids) {
  const PointSet p(6, 1, {0, 0, 0, 0, 1, 1});
  const auto r = kmeans(p, 3, 100, 2);
  EXPECT_EQ(r.centroids.size(), 3u);
}

TEST(ReduceRandom, FullSizeKeepsAllRowsInOrder) {
  const PointSet p = oracle::random_points(50, 2, 10);
  EXPECT_EQ(reduce_random(p, 50, 3), p);
}

TEST(ReduceRandom, SeededSubset) {
  const PointSet p = spiral(1000, 2.0, 0.02, 1).without_labels();
  const auto a = reduce_random(p, 200, 4);
  EXPECT_EQ(a, reduce_random(p, 200, 4));
  EXPECT_NE(a, reduce_random(p, 200, 5));
  EXPECT_EQ(a.size(), 200u);
  const auto source = rows_of(p);
  const auto chosen = rows_of(a);
  EXPECT_EQ(chosen.size(), 200u);
  for (const auto& r : chosen) EXPECT_TRUE(source.count(r));
}

TEST(ReduceRandom, RangeErrors) {
  EXPECT_THROW(reduce_random(kFourPoints, 1, 0), UsageError);
  EXPECT_THROW(reduce_random(kFourPoints, 5, 0), UsageError);
}

TEST(ReduceKMeanCenter, OwnClusterPerRow) {
  const PointSet p = oracle::random_points(30, 2, 11);
  EXPECT_EQ(rows_of(reduce_kmean_center(p, 30, 1)), rows_of(p));
}

TEST(ReduceKMeanCenter, Midpoints) {
  EXPECT_EQ(rows_of(reduce_kmean_center(kFourPoints, 2, 3)), (std::set<V>{{0, 0.5}, {10, 0.5}}));
}

TEST(ReduceKMeanCenter, CentroidsAreMeansOfTheirMembers) {
  const PointSet p = spiral(1000, 2.0, 0.02, 1).without_labels();
  const auto r = kmeans(p, 200, 100, 12);
  const auto reduced = reduce_kmean_center(p, 200, 12);
  EXPECT_EQ(reduced, r.centroids);
  // Converged or capped, every centroid with members is their mean, which
  // lies in their convex hull.
  std::vector<V> sums(200, V(2, 0.0));
  std::vector<std::size_t> counts(200, 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    sums[r.assignment[i]][0] += p.row(i)[0];
    sums[r.assignment[i]][1] += p.row(i)[1];
    ++counts[r.assignment[i]];
  }
  if (r.iterations < 100) {
    for (std::size_t c = 0; c < 200; ++c) {
      ASSERT_GT(counts[c], 0u);
      EXPECT_NEAR(r.centroids.row(c)[0], sums[c][0] / counts[c], 1e-12);
      EXPECT_NEAR(r.centroids.row(c)[1], sums[c][1] / counts[c], 1e-12);
    }
  }
}

TEST(ReduceKMeanCenterPlus, TieGoesToLowestIndex) {
  const auto r = reduce_kmean_center_plus(kFourPoints, 2, 3);
  EXPECT_EQ(rows_of(r), (std::set<V>{{0, 0}, {10, 0}}));
}

TEST(ReduceKMeanCenterPlus, RowsAreNearestOriginals) {
  const PointSet p = spiral(1000, 2.0, 0.02, 1).without_labels();
  const auto centroids = kmeans(p, 200, 100, 13).centroids;
  const auto plus = reduce_kmean_center_plus(p, 200, 13);
  const auto source = rows_of(p);
  std::set<V> expected;
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < p.size(); ++i) {
      if (oracle::naive_distance(centroids.row(c), p.row(i)) <
          oracle::naive_distance(centroids.row(c), p.row(best))) {
        best = i;
      }
    }
    expected.emplace(p.row(best).begin(), p.row(best).end());
  }
  EXPECT_EQ(rows_of(plus), expected);
  EXPECT_EQ(plus.size(), expected.size());
  for (const auto& r : rows_of(plus)) EXPECT_TRUE(source.count(r));
}

TEST(ReduceKMeanCenterPlus, DeduplicatesSharedNearestRows) {
  // Coincident rows force coincident centroids, which all map to the first
  // copy of their row.
  const PointSet p(6, 1, {0, 0, 0, 5, 5, 5});
  const auto r = reduce_kmean_center_plus(p, 4, 1);
  EXPECT_EQ(r.size(), 2u);
  EXPECT_EQ(rows_of(r), (std::set<V>{{0}, {5}}));
}

TEST(Strategy, NamesRoundTrip) {
  for (auto k : {StrategyKind::kRandom, StrategyKind::kKMeanCenter, StrategyKind::kKMeanCenterPlus,
                 StrategyKind::kNone}) {
    EXPECT_EQ(parse_strategy(strategy_name(k)), k);
  }
  EXPECT_FALSE(parse_strategy("kmeans"));
}

TEST(Strategy, ApplyClampsAndNoneKeepsAll) {
  const PointSet p = oracle::random_points(10, 2, 14);
  EXPECT_EQ(apply_reduction(p, {StrategyKind::kNone, 3, 0}), p);
  EXPECT_EQ(apply_reduction(p, {StrategyKind::kRandom, 50, 0}).size(), 10u);
}

}  // namespace
}  // namespace lensdepth
