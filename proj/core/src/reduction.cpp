#include "lensdepth/reduction.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "lensdepth/error.hpp"
#include "lensdepth/kmeans.hpp"
#include "lensdepth/random.hpp"

namespace lensdepth {
namespace {

void check_target(const PointSet& p, std::size_t n) {
  if (n < 2 || n > p.size()) {
    throw UsageError("inner point count must be in [2, " + std::to_string(p.size()) +
                     "], got " + std::to_string(n));
  }
}

}  // namespace

std::string_view strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kRandom: return "random";
    case StrategyKind::kKMeanCenter: return "kmean-center";
    case StrategyKind::kKMeanCenterPlus: return "kmean-center-plus";
    case StrategyKind::kNone: return "none";
  }
  return "unknown";
}

std::optional<StrategyKind> parse_strategy(std::string_view name) {
  for (auto k : {StrategyKind::kRandom, StrategyKind::kKMeanCenter,
                 StrategyKind::kKMeanCenterPlus, StrategyKind::kNone}) {
    if (strategy_name(k) == name) return k;
  }
  return std::nullopt;
}

PointSet reduce_random(const PointSet& p, std::size_t n, std::uint64_t seed) {
  check_target(p, n);
  std::vector<std::size_t> idx(p.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(idx.size() - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(n);
  std::sort(idx.begin(), idx.end());
  return p.select(idx).without_labels();
}

PointSet reduce_kmean_center(const PointSet& p, std::size_t n, std::uint64_t seed,
                             std::size_t max_iters) {
  check_target(p, n);
  return kmeans(p.without_labels(), n, max_iters, seed).centroids;
}

PointSet reduce_kmean_center_plus(const PointSet& p, std::size_t n, std::uint64_t seed,
                                  std::size_t max_iters) {
  check_target(p, n);
  const PointSet plain = p.without_labels();
  const PointSet centroids = kmeans(plain, n, max_iters, seed).centroids;
  std::vector<std::size_t> chosen;
  std::vector<char> taken(plain.size(), 0);
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const std::size_t i = nearest_particle(centroids.row(c), plain).index;
    if (!taken[i]) {
      taken[i] = 1;
      chosen.push_back(i);
    }
  }
  return plain.select(chosen);
}

PointSet apply_reduction(const PointSet& p, const ReductionStrategy& s) {
  const std::size_t n = std::min(s.n, p.size());
  switch (s.kind) {
    case StrategyKind::kRandom: return reduce_random(p, n, s.seed);
    case StrategyKind::kKMeanCenter: return reduce_kmean_center(p, n, s.seed, s.max_iters);
    case StrategyKind::kKMeanCenterPlus:
      return reduce_kmean_center_plus(p, n, s.seed, s.max_iters);
    case StrategyKind::kNone: return p.without_labels();
  }
  throw UsageError("unknown reduction strategy");
}

}  // namespace lensdepth
