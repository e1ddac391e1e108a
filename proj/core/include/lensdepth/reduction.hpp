#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "lensdepth/point_set.hpp"

namespace lensdepth {

enum class StrategyKind { kRandom, kKMeanCenter, kKMeanCenterPlus, kNone };

std::string_view strategy_name(StrategyKind kind);
std::optional<StrategyKind> parse_strategy(std::string_view name);

struct ReductionStrategy {
  StrategyKind kind = StrategyKind::kKMeanCenter;
  std::size_t n = 1500;
  std::uint64_t seed = 0;
  std::size_t max_iters = 100;

  friend bool operator==(const ReductionStrategy&, const ReductionStrategy&) = default;
};

/// n distinct rows drawn without replacement, kept in source order.
PointSet reduce_random(const PointSet& p, std::size_t n, std::uint64_t seed);

/// The n k-means centroids of `p`.
PointSet reduce_kmean_center(const PointSet& p, std::size_t n, std::uint64_t seed,
                             std::size_t max_iters = 100);

/// The original row nearest to each k-means centroid (lowest index on ties).
/// Coincident selections are dropped, so fewer than n rows may come back.
PointSet reduce_kmean_center_plus(const PointSet& p, std::size_t n,
                                  std::uint64_t seed, std::size_t max_iters = 100);

/// Applies `s` with its target clamped to |p|. Labels are dropped.
PointSet apply_reduction(const PointSet& p, const ReductionStrategy& s);

}  // namespace lensdepth
