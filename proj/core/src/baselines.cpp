#include "lensdepth/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lensdepth/distance_matrix.hpp"
#include "lensdepth/error.hpp"

namespace lensdepth {
namespace {

Eigen::Map<const Eigen::VectorXd> as_vector(std::span<const double> x) {
  return {x.data(), static_cast<Eigen::Index>(x.size())};
}

void check_dim(std::size_t got, std::size_t want) {
  if (got != want) {
    throw UsageError("dimension mismatch: query has " + std::to_string(got) + ", expected " +
                     std::to_string(want));
  }
}

std::vector<std::vector<std::size_t>> rows_by_class(const PointSet& p,
                                                    const std::vector<ClassId>& ids) {
  std::vector<std::vector<std::size_t>> rows(ids.size());
  const auto& labels = p.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto pos = std::lower_bound(ids.begin(), ids.end(), labels[i]) - ids.begin();
    rows[static_cast<std::size_t>(pos)].push_back(i);
  }
  return rows;
}

Eigen::VectorXd mean_of(const PointSet& p, const std::vector<std::size_t>& rows) {
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p.dim()));
  for (std::size_t i : rows) mu += as_vector(p.row(i));
  return mu / static_cast<double>(rows.size());
}

Eigen::MatrixXd scatter_of(const PointSet& p, const std::vector<std::size_t>& rows,
                           const Eigen::VectorXd& mu) {
  const auto d = static_cast<Eigen::Index>(p.dim());
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i : rows) {
    const Eigen::VectorXd c = as_vector(p.row(i)) - mu;
    s.selfadjointView<Eigen::Lower>().rankUpdate(c);
  }
  return s.selfadjointView<Eigen::Lower>();
}

}  // namespace

double euclidean_centroid_score(const PointSet& centroids, std::span<const double> x) {
  if (centroids.empty()) throw UsageError("euclidean_centroid_score: no centroids");
  check_dim(x.size(), centroids.dim());
  return -nearest_particle(x, centroids).distance;
}

PointSet class_centroids(const PointSet& labeled) {
  const auto ids = labeled.classes();
  const auto rows = rows_by_class(labeled, ids);
  std::vector<double> data;
  for (const auto& r : rows) {
    const Eigen::VectorXd mu = mean_of(labeled, r);
    data.insert(data.end(), mu.data(), mu.data() + mu.size());
  }
  return PointSet(ids.size(), labeled.dim(), std::move(data), ids);
}

GaussianClassStats::GaussianClassStats(ClassId class_id, Eigen::VectorXd mean,
                                       Eigen::MatrixXd cov, double eps)
    : class_id_(class_id), mean_(std::move(mean)), eps_(eps) {
  if (!(eps_ >= 0.0)) throw UsageError("covariance regularization must be >= 0");
  cov.diagonal().array() += eps_;
  llt_.compute(cov);
  if (llt_.info() != Eigen::Success) {
    throw NumericError("covariance of class " + std::to_string(class_id_) +
                       " is not positive definite after regularization (eps = " +
                       std::to_string(eps_) + ")");
  }
}

double GaussianClassStats::squared_distance(std::span<const double> x) const {
  check_dim(x.size(), static_cast<std::size_t>(mean_.size()));
  const Eigen::VectorXd z = llt_.matrixL().solve(as_vector(x) - mean_);
  return z.squaredNorm();
}

std::vector<GaussianClassStats> fit_gaussian_stats(const PointSet& labeled,
                                                   const MahalanobisOptions& options) {
  const auto ids = labeled.classes();
  const auto rows = rows_by_class(labeled, ids);
  const auto d = static_cast<double>(labeled.dim());
  std::vector<Eigen::VectorXd> means;
  for (std::size_t c = 0; c < ids.size(); ++c) {
    if (rows[c].size() < 2) {
      throw UsageError("class " + std::to_string(ids[c]) + " needs at least 2 points for a covariance");
    }
    means.push_back(mean_of(labeled, rows[c]));
  }

  auto eps_for = [&](const Eigen::MatrixXd& cov) {
    return options.eps >= 0.0 ? options.eps : 1e-6 * cov.trace() / d;
  };

  std::vector<GaussianClassStats> out;
  if (options.pooled) {
    Eigen::MatrixXd pooled = Eigen::MatrixXd::Zero(means[0].size(), means[0].size());
    for (std::size_t c = 0; c < ids.size(); ++c) pooled += scatter_of(labeled, rows[c], means[c]);
    pooled /= static_cast<double>(labeled.size() - ids.size());
    const double eps = eps_for(pooled);
    for (std::size_t c = 0; c < ids.size(); ++c) out.emplace_back(ids[c], means[c], pooled, eps);
  } else {
    for (std::size_t c = 0; c < ids.size(); ++c) {
      Eigen::MatrixXd cov = scatter_of(labeled, rows[c], means[c]) /
                            static_cast<double>(rows[c].size() - 1);
      const double eps = eps_for(cov);
      out.emplace_back(ids[c], means[c], std::move(cov), eps);
    }
  }
  return out;
}

MahalanobisResult mahalanobis_nearest(std::span<const GaussianClassStats> stats,
                                      std::span<const double> x) {
  if (stats.empty()) throw UsageError("mahalanobis: no class statistics");
  MahalanobisResult best{-std::numeric_limits<double>::infinity(), 0};
  double best_sq = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < stats.size(); ++c) {
    const double sq = stats[c].squared_distance(x);
    if (sq < best_sq) {
      best_sq = sq;
      best.index = c;
    }
  }
  best.score = -std::sqrt(best_sq);
  return best;
}

double mahalanobis_score(std::span<const GaussianClassStats> stats, std::span<const double> x) {
  return mahalanobis_nearest(stats, x).score;
}

double knn_score(const PointSet& train, std::span<const double> x, std::size_t k) {
  if (k < 1 || k > train.size()) {
    throw UsageError("knn: k must be in [1, " + std::to_string(train.size()) + "], got " +
                     std::to_string(k));
  }
  check_dim(x.size(), train.dim());
  std::vector<double> sq(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) sq[i] = squared_euclidean(x, train.row(i));
  std::nth_element(sq.begin(), sq.begin() + static_cast<std::ptrdiff_t>(k - 1), sq.end());
  return -std::sqrt(sq[k - 1]);
}

KnnScorer::KnnScorer(const PointSet& train, std::size_t k, bool normalize)
    : train_(normalize ? l2_normalize(train) : train), k_(k), normalize_(normalize) {
  if (k_ < 1 || k_ > train_.size()) {
    throw UsageError("knn: k must be in [1, " + std::to_string(train_.size()) + "], got " +
                     std::to_string(k_));
  }
}

double KnnScorer::operator()(std::span<const double> x) const {
  if (!normalize_) return knn_score(train_, x, k_);
  return knn_score(train_, l2_normalize(x), k_);
}

double softmax_entropy(std::span<const double> p) {
  if (p.empty()) throw UsageError("entropy of an empty probability vector");
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw UsageError("probability vector has a negative or NaN entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw UsageError("probability vector sums to " + std::to_string(sum) + ", not 1");
  }
  double h = 0.0;
  for (double v : p) {
    const double q = v / sum;
    if (q > 0.0) h -= q * std::log(q);
  }
  return h;
}

double euclidean_lens_depth(const PointSet& q, std::span<const double> x) {
  if (q.size() < 2) throw UsageError("lens depth needs at least 2 points");
  check_dim(x.size(), q.dim());
  const std::size_t m = q.size();
  std::vector<double> dx(m);
  for (std::size_t i = 0; i < m; ++i) dx[i] = euclidean(x, q.row(i));
  std::uint64_t count = 0;
  for (std::size_t i = 1; i < m; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (std::max(dx[i], dx[j]) <= euclidean(q.row(i), q.row(j))) ++count;
    }
  }
  return static_cast<double>(count) / static_cast<double>(lower_triangle_size(m));
}

}  // namespace lensdepth
