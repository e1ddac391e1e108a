#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "lensdepth/error.hpp"
#include "lensdepth/fermat.hpp"
#include "lensdepth/parallel.hpp"
#include "oracles.hpp"

namespace lensdepth {
namespace {

using V = std::vector<double>;

void expect_matches_oracle(const FermatGraph& g, const std::vector<double>& full, double rel) {
  const std::size_t m = g.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double want = full[i * m + j];
      ASSERT_LE(std::abs(g.pairwise()(i, j) - want), rel * std::max(want, 1e-300))
          << i << "," << j;
    }
  }
}

TEST(FermatGraph, HopsBeatDirectEdge) {
  const auto g = build_fermat_graph(PointSet(3, 1, {0, 1, 2}), 2.0);
  EXPECT_EQ(fermat_between_samples(g, 0, 2), 2.0);
  EXPECT_EQ(fermat_between_samples(g, 0, 1), 1.0);
  EXPECT_EQ(fermat_path(g, 0, 2), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(FermatGraph, AlphaOneIsEuclidean) {
  const PointSet q = oracle::random_points(40, 3, 21);
  const auto g = build_fermat_graph(q, 1.0);
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      EXPECT_EQ(g.pairwise()(i, j), euclidean(q.row(i), q.row(j)));
    }
  }
}

TEST(FermatGraph, MatchesFloydWarshall) {
  const PointSet q = oracle::random_points(200, 2, 31);
  const auto g = build_fermat_graph(q, 3.0);
  expect_matches_oracle(g, oracle::floyd_warshall(q, 3.0), 1e-9);
}

TEST(FermatGraph, MatchesFloydWarshallHighDimAndAlpha) {
  const PointSet q = oracle::random_points(60, 25, 32);
  const auto g = build_fermat_graph(q, 7.0);
  expect_matches_oracle(g, oracle::floyd_warshall(q, 7.0), 1e-9);
}

TEST(FermatGraph, BetweenSamplesSymmetricZeroDiagonalAndChecked) {
  const PointSet q = oracle::random_points(30, 2, 33);
  const auto g = build_fermat_graph(q, 4.0);
  const auto full = oracle::floyd_warshall(q, 4.0);
  for (std::size_t i = 0; i < 30; ++i) {
    EXPECT_EQ(fermat_between_samples(g, i, i), 0.0);
    for (std::size_t j = 0; j < 30; ++j) {
      EXPECT_EQ(fermat_between_samples(g, i, j), fermat_between_samples(g, j, i));
    }
  }
  EXPECT_NEAR(fermat_between_samples(g, 3, 17), full[3 * 30 + 17], 1e-9 * full[3 * 30 + 17]);
  EXPECT_THROW(fermat_between_samples(g, 0, 30), UsageError);
}

TEST(FermatGraph, DirectEdgeIsUpperBound) {
  const PointSet q = oracle::random_points(50, 3, 34);
  const auto g = build_fermat_graph(q, 2.5);
  for (std::size_t i = 0; i < 50; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      EXPECT_LE(g.pairwise()(i, j), fermat_edge_weight(euclidean(q.row(i), q.row(j)), 2.5));
    }
  }
}

TEST(FermatGraph, AddingPointsNeverLengthensPaths) {
  const PointSet big = oracle::random_points(25, 2, 35);
  std::vector<std::size_t> first(20);
  for (std::size_t i = 0; i < 20; ++i) first[i] = i;
  const auto small_g = build_fermat_graph(big.select(first), 3.0);
  const auto big_g = build_fermat_graph(big, 3.0);
  for (std::size_t i = 0; i < 20; ++i) {
    for (std::size_t j = 0; j < i; ++j) EXPECT_LE(big_g.pairwise()(i, j), small_g.pairwise()(i, j));
  }
}

TEST(FermatGraph, DuplicateRowsAreZeroCostHops) {
  const auto g = build_fermat_graph(PointSet(4, 1, {0, 1, 1, 2}), 2.0);
  EXPECT_EQ(g.pairwise()(1, 2), 0.0);
  EXPECT_EQ(g.pairwise()(0, 3), 2.0);
}

TEST(FermatGraph, Preconditions) {
  EXPECT_THROW(build_fermat_graph(PointSet(3, 1, {0, 1, 2}), 0.5), UsageError);
  EXPECT_THROW(build_fermat_graph(PointSet(1, 1, {0}), 2.0), UsageError);
}

TEST(FermatGraph, ResultIndependentOfThreadCount) {
  const PointSet q = oracle::random_points(80, 2, 36);
  set_thread_count(1);
  const auto one = build_fermat_graph(q, 5.0);
  set_thread_count(4);
  const auto four = build_fermat_graph(q, 5.0);
  set_thread_count(0);
  EXPECT_EQ(one, four);
}

TEST(FermatGraph, KnnApproximationUpperBoundsExact) {
  const PointSet q = oracle::random_points(120, 2, 37);
  const auto exact = build_fermat_graph(q, 3.0);
  const auto approx = build_fermat_graph(q, 3.0, {.approx_knn_edges = 10});
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) EXPECT_GE(approx.pairwise()(i, j), exact.pairwise()(i, j));
  }
}

TEST(ModifiedFermat, OneDimensionalExample) {
  const auto g = build_fermat_graph(PointSet(3, 1, {0, 1, 2}), 2.0);
  EXPECT_EQ(modified_fermat_to_all(g, V{3}), (V{3, 2, 1}));
}

TEST(ModifiedFermat, QueryOnSampleEqualsPairwiseRow) {
  const PointSet q = oracle::random_points(40, 2, 41);
  const auto g = build_fermat_graph(q, 3.0);
  V row(40);
  for (std::size_t i : {0u, 7u, 39u}) {
    g.pairwise().copy_row(i, row);
    const auto r = q.row(i);
    EXPECT_EQ(modified_fermat_to_all(g, V(r.begin(), r.end())), row);
  }
}

TEST(ModifiedFermat, MatchesBruteForce) {
  const PointSet q = oracle::random_points(50, 3, 42);
  const auto g = build_fermat_graph(q, 3.0);
  const auto full = oracle::floyd_warshall(q, 3.0);
  std::mt19937_64 gen(43);
  for (int t = 0; t < 30; ++t) {
    const auto x = oracle::random_vector(3, gen, -0.5, 1.5);
    const auto want = oracle::modified_distances(q, full, 3.0, x);
    const auto got = modified_fermat_to_all(g, x);
    for (std::size_t y = 0; y < 50; ++y) EXPECT_NEAR(got[y], want[y], 1e-9 * want[y]);
  }
}

TEST(ModifiedFermat, LowerBoundAndDominance) {
  const PointSet q = oracle::random_points(60, 2, 44);
  const auto g = build_fermat_graph(q, 4.0);
  std::mt19937_64 gen(45);
  for (int t = 0; t < 100; ++t) {
    const auto x = oracle::random_vector(2, gen, -3, 4);
    const auto mod = modified_fermat_to_all(g, x);
    const auto unmod = unmodified_fermat_to_all(g, x);
    const auto near = nearest_particle(x, q);
    const double snap = fermat_edge_weight(near.distance, 4.0);
    for (std::size_t y = 0; y < 60; ++y) {
      EXPECT_GE(mod[y], snap);
      EXPECT_LE(mod[y], snap + unmod[y]);
    }
  }
}

TEST(ModifiedFermat, DivergesFarAway) {
  const auto g = build_fermat_graph(oracle::random_points(30, 2, 46), 3.0);
  double previous = 0.0;
  for (double r : {2.0, 5.0, 20.0, 100.0}) {
    const auto d = modified_fermat_to_all(g, V{r, r});
    const double lo = *std::min_element(d.begin(), d.end());
    EXPECT_GT(lo, previous);
    previous = lo;
  }
  EXPECT_GT(previous, 1e5);
}

TEST(ModifiedFermat, DimensionMismatch) {
  const auto g = build_fermat_graph(PointSet(3, 1, {0, 1, 2}), 2.0);
  EXPECT_THROW(modified_fermat_to_all(g, V{1, 2}), UsageError);
  EXPECT_THROW(unmodified_fermat_to_all(g, V{1, 2}), UsageError);
}

TEST(UnmodifiedFermat, SnapsToNearestParticle) {
  const PointSet q = oracle::random_points(40, 2, 47);
  const auto g = build_fermat_graph(q, 3.0);
  std::mt19937_64 gen(48);
  V row(40);
  for (int t = 0; t < 50; ++t) {
    const auto x = oracle::random_vector(2, gen, -1, 2);
    g.pairwise().copy_row(nearest_particle(x, q).index, row);
    EXPECT_EQ(unmodified_fermat_to_all(g, x), row);
  }
  // Two queries in the cell of point 0 agree.
  const auto p0 = q.row(0);
  const V a{p0[0] + 1e-6, p0[1]};
  const V b{p0[0], p0[1] - 1e-6};
  EXPECT_EQ(unmodified_fermat_to_all(g, a), unmodified_fermat_to_all(g, b));
}

TEST(GraphIo, RoundTripIsBitExact) {
  const auto g = build_fermat_graph(oracle::random_points(25, 3, 49), 7.0);
  std::stringstream s;
  write_graph(s, g);
  const std::string bytes = s.str();
  EXPECT_EQ(bytes.substr(0, 8), "LDGRAF01");
  EXPECT_EQ(bytes.size(), 8u + 8 + 8 + 8 + 25 * 3 * 8 + 25 * 24 / 2 * 8);
  EXPECT_EQ(read_graph(s), g);
}

TEST(GraphIo, RejectsBadMagic) {
  std::stringstream s("NOTAGRAPH.......");
  EXPECT_THROW(read_graph(s), IoError);
}

}  // namespace
}  // namespace lensdepth
