#include "lensdepth/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lensdepth/error.hpp"
#include "lensdepth/parallel.hpp"
#include "lensdepth/random.hpp"

namespace lensdepth {
namespace {

std::size_t sample_by_weight(const std::vector<double>& w, double total, Rng& rng) {
  if (!(total > 0.0)) return static_cast<std::size_t>(rng.below(w.size()));
  const double r = rng.uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    if (acc > r) return i;
  }
  // Rounding left r at the very end; take the last positive weight.
  for (std::size_t i = w.size(); i-- > 0;) {
    if (w[i] > 0.0) return i;
  }
  return w.size() - 1;
}

std::vector<std::size_t> seed_centers(const PointSet& p, std::size_t k, Rng& rng) {
  const std::size_t n = p.size();
  const std::size_t trials = 2 + static_cast<std::size_t>(std::log(static_cast<double>(k)));
  std::vector<std::size_t> centers{static_cast<std::size_t>(rng.below(n))};
  std::vector<double> closest(n);
  for (std::size_t i = 0; i < n; ++i) closest[i] = squared_euclidean(p.row(i), p.row(centers[0]));
  double potential = 0.0;
  for (double v : closest) potential += v;

  std::vector<double> candidate_closest(n);
  std::vector<double> best_closest(n);
  while (centers.size() < k) {
    double best_potential = std::numeric_limits<double>::infinity();
    std::size_t best = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const std::size_t c = sample_by_weight(closest, potential, rng);
      double pot = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        candidate_closest[i] = std::min(closest[i], squared_euclidean(p.row(i), p.row(c)));
        pot += candidate_closest[i];
      }
      if (pot < best_potential) {
        best_potential = pot;
        best = c;
        best_closest.swap(candidate_closest);
      }
    }
    centers.push_back(best);
    closest.swap(best_closest);
    potential = best_potential;
  }
  return centers;
}

void assign(const PointSet& p, const std::vector<double>& centroids, std::size_t k,
            std::vector<std::size_t>& out) {
  const std::size_t d = p.dim();
  parallel_for(p.size(), [&](std::size_t i) {
    std::size_t best = 0;
    double best_sq = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
      const double sq = squared_euclidean(p.row(i), {centroids.data() + c * d, d});
      if (sq < best_sq) {
        best_sq = sq;
        best = c;
      }
    }
    out[i] = best;
  });
}

void recompute_centroid(const PointSet& p, const std::vector<std::size_t>& assignment,
                        std::size_t c, std::vector<double>& centroids) {
  const std::size_t d = p.dim();
  std::vector<double> sum(d, 0.0);
  std::size_t count = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (assignment[i] != c) continue;
    const auto r = p.row(i);
    for (std::size_t j = 0; j < d; ++j) sum[j] += r[j];
    ++count;
  }
  if (count == 0) return;
  for (std::size_t j = 0; j < d; ++j) centroids[c * d + j] = sum[j] / static_cast<double>(count);
}

void update_centroids(const PointSet& p, std::vector<std::size_t>& assignment, std::size_t k,
                      std::vector<double>& centroids) {
  const std::size_t d = p.dim();
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t a : assignment) ++counts[a];
  for (std::size_t c = 0; c < k; ++c) recompute_centroid(p, assignment, c, centroids);

  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] != 0) continue;
    const std::size_t donor = static_cast<std::size_t>(
        std::max_element(counts.begin(), counts.end()) - counts.begin());
    if (counts[donor] < 2) break;
    std::size_t far = 0;
    double far_sq = -1.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (assignment[i] != donor) continue;
      const double sq = squared_euclidean(p.row(i), {centroids.data() + donor * d, d});
      if (sq > far_sq) {
        far_sq = sq;
        far = i;
      }
    }
    assignment[far] = c;
    --counts[donor];
    ++counts[c];
    std::copy_n(p.row(far).begin(), d, centroids.begin() + static_cast<std::ptrdiff_t>(c * d));
    recompute_centroid(p, assignment, donor, centroids);
  }
}

}  // namespace

double within_cluster_sum_of_squares(const PointSet& p, const PointSet& centroids,
                                     const std::vector<std::size_t>& assignment) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += squared_euclidean(p.row(i), centroids.row(assignment[i]));
  return s;
}

KMeansResult kmeans(const PointSet& p, std::size_t k, std::size_t max_iters, std::uint64_t seed) {
  if (k < 1 || k > p.size()) {
    throw UsageError("kmeans: k must be in [1, " + std::to_string(p.size()) + "], got " +
                     std::to_string(k));
  }
  const std::size_t d = p.dim();
  Rng rng(seed);
  std::vector<double> centroids;
  centroids.reserve(k * d);
  for (std::size_t c : seed_centers(p, k, rng)) {
    const auto r = p.row(c);
    centroids.insert(centroids.end(), r.begin(), r.end());
  }

  std::vector<std::size_t> assignment(p.size());
  std::vector<std::size_t> next(p.size());
  assign(p, centroids, k, assignment);
  std::size_t iterations = 0;
  while (iterations < max_iters) {
    update_centroids(p, assignment, k, centroids);
    ++iterations;
    assign(p, centroids, k, next);
    const bool converged = next == assignment;
    assignment.swap(next);
    if (converged) break;
  }

  KMeansResult result{PointSet(k, d, std::move(centroids)), std::move(assignment), iterations, 0.0};
  result.inertia = within_cluster_sum_of_squares(p, result.centroids, result.assignment);
  return result;
}

}  // namespace lensdepth
