#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "lensdepth/point_set.hpp"

namespace lensdepth {

// Every scorer here follows the depth orientation: higher = more
// in-distribution.

/// -min_i |x - centroid_i|.
double euclidean_centroid_score(const PointSet& centroids, std::span<const double> x);

/// Per-class means of a labeled set, in ascending class order.
PointSet class_centroids(const PointSet& labeled);

/// Gaussian summary of one class with a Cholesky factor of (cov + eps I).
class GaussianClassStats {
 public:
  GaussianClassStats(ClassId class_id, Eigen::VectorXd mean, Eigen::MatrixXd cov,
                     double eps);

  ClassId class_id() const { return class_id_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  double eps() const { return eps_; }

  /// Squared Mahalanobis distance via a triangular solve.
  double squared_distance(std::span<const double> x) const;

 private:
  ClassId class_id_;
  Eigen::VectorXd mean_;
  double eps_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

struct MahalanobisOptions {
  /// Covariance pooled over all classes instead of per class.
  bool pooled = false;
  /// Negative selects the default 1e-6 * trace(cov) / d.
  double eps = -1.0;
};

std::vector<GaussianClassStats> fit_gaussian_stats(const PointSet& labeled,
                                                   const MahalanobisOptions& options = {});

struct MahalanobisResult {
  double score;       // -min distance
  std::size_t index;  // position in the stats list of the closest class
};

MahalanobisResult mahalanobis_nearest(std::span<const GaussianClassStats> stats,
                                      std::span<const double> x);
double mahalanobis_score(std::span<const GaussianClassStats> stats,
                         std::span<const double> x);

/// -(distance to the k-th nearest row of `train`). No normalisation.
double knn_score(const PointSet& train, std::span<const double> x, std::size_t k);

/// k-th nearest neighbour scorer that l2-normalises training rows and
/// queries, as the method prescribes for deep features.
class KnnScorer {
 public:
  KnnScorer(const PointSet& train, std::size_t k, bool normalize = true);
  double operator()(std::span<const double> x) const;
  std::size_t dim() const { return train_.dim(); }

 private:
  PointSet train_;
  std::size_t k_;
  bool normalize_;
};

/// Shannon entropy in nats; the vector is renormalised to sum 1.
/// Higher means more uncertain.
double softmax_entropy(std::span<const double> p);

/// Lens depth with plain Euclidean distances throughout.
double euclidean_lens_depth(const PointSet& q, std::span<const double> x);

}  // namespace lensdepth
