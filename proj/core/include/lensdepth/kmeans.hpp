#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lensdepth/point_set.hpp"

namespace lensdepth {

struct KMeansResult {
  PointSet centroids;
  std::vector<std::size_t> assignment;
  std::size_t iterations = 0;
  double inertia = 0.0;
};

/// Lloyd's algorithm from greedy k-means++ seeding (several D^2-weighted
/// candidates per step, keeping the one with the lowest potential).
///
/// Stops after `max_iters` updates or once assignments stop changing.
/// Assignment ties go to the lowest centroid index. A centroid left empty
/// takes the point farthest from its centroid within the largest cluster.
KMeansResult kmeans(const PointSet& p, std::size_t k, std::size_t max_iters,
                    std::uint64_t seed);

double within_cluster_sum_of_squares(const PointSet& p, const PointSet& centroids,
                                     const std::vector<std::size_t>& assignment);

}  // namespace lensdepth
