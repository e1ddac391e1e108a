#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lensdepth/fermat.hpp"
#include "lensdepth/point_set.hpp"
#include "lensdepth/reduction.hpp"

namespace lensdepth {

enum class DistanceMode { kModified, kUnmodified };

/// Number of inner-point pairs (i < j) whose lens contains the query, i.e.
/// max(d(x, q_i), d(x, q_j)) <= D(q_i, q_j). Balls are closed.
std::uint64_t lens_count(const FermatGraph& g, std::span<const double> x,
                         DistanceMode mode = DistanceMode::kModified);

/// Empirical lens depth: lens_count / (m choose 2).
double lens_depth(const FermatGraph& g, std::span<const double> x,
                  DistanceMode mode = DistanceMode::kModified);

/// Lens count for precomputed query distances `dx` (size m).
std::uint64_t lens_count_from_distances(const DistanceMatrix& pairwise,
                                        std::span<const double> dx);

inline constexpr double kDefaultAlpha = 7.0;

struct ClusterModel {
  ClassId class_id;
  FermatGraph graph;

  friend bool operator==(const ClusterModel&, const ClusterModel&) = default;
};

struct FitOptions {
  double alpha = kDefaultAlpha;
  ReductionStrategy strategy{};
  bool normalize = false;
  FermatOptions fermat{};
};

/// Fitted confidence scorer: one Fermat graph per class, and the score of a
/// query is its largest lens depth over the classes.
class DepthScorer {
 public:
  DepthScorer(std::vector<ClusterModel> clusters, double alpha,
              ReductionStrategy strategy, bool normalize);

  const std::vector<ClusterModel>& clusters() const { return clusters_; }
  double alpha() const { return alpha_; }
  const ReductionStrategy& strategy() const { return strategy_; }
  bool normalize() const { return normalize_; }
  std::size_t dim() const { return clusters_.front().graph.dim(); }

  /// Lens depth against each cluster, in cluster order.
  std::vector<double> cluster_depths(std::span<const double> x) const;

  friend bool operator==(const DepthScorer&, const DepthScorer&) = default;

 private:
  std::vector<ClusterModel> clusters_;
  double alpha_;
  ReductionStrategy strategy_;
  bool normalize_;
};

DepthScorer fit(const PointSet& features, const FitOptions& options);

double score(const DepthScorer& s, std::span<const double> x);

/// Order-preserving; queries are scored in parallel.
std::vector<double> score_batch(const DepthScorer& s, const PointSet& x);

inline constexpr int kModelFormatVersion = 1;

/// Writes `model.json` plus one `class_<id>.ldgraf` per cluster into `dir`.
/// `config_json`, when non-empty, must be a JSON document; it is stored
/// verbatim under the "config" key.
void save_scorer(const std::filesystem::path& dir, const DepthScorer& s,
                 const std::string& config_json = {});
DepthScorer load_scorer(const std::filesystem::path& dir);

}  // namespace lensdepth
