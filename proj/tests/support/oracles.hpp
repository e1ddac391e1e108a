#pragma once

// Independent reference implementations used only by tests. Each one takes
// the slow, obvious route so it shares no code path with the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "lensdepth/point_set.hpp"

namespace lensdepth::oracle {

inline double naive_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

/// Full m x m matrix of power-weighted shortest paths by Floyd-Warshall.
inline std::vector<double> floyd_warshall(const PointSet& q, double alpha) {
  const std::size_t m = q.size();
  std::vector<double> d(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) d[i * m + j] = std::pow(naive_distance(q.row(i), q.row(j)), alpha);
  }
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      const double dik = d[i * m + k];
      for (std::size_t j = 0; j < m; ++j) {
        d[i * m + j] = std::min(d[i * m + j], dik + d[k * m + j]);
      }
    }
  }
  return d;
}

/// min over q of |x - q|^alpha + D(q, y), by exhaustive double loop.
inline std::vector<double> modified_distances(const PointSet& q, const std::vector<double>& full,
                                              double alpha, std::span<const double> x) {
  const std::size_t m = q.size();
  std::vector<double> out(m, std::numeric_limits<double>::infinity());
  for (std::size_t y = 0; y < m; ++y) {
    for (std::size_t j = 0; j < m; ++j) {
      out[y] = std::min(out[y], std::pow(naive_distance(x, q.row(j)), alpha) + full[j * m + y]);
    }
  }
  return out;
}

/// Counts pairs i < j with max(dx_i, dx_j) <= D(i, j) over every pair.
inline std::uint64_t lens_pairs(const std::vector<double>& full, std::size_t m,
                                const std::vector<double>& dx) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (dx[i] <= full[i * m + j] && dx[j] <= full[i * m + j]) ++c;
    }
  }
  return c;
}

/// P(id > ood) + 0.5 P(id == ood) by comparing every pair.
inline double pairwise_auroc(const std::vector<double>& id, const std::vector<double>& ood) {
  double wins = 0.0;
  for (double a : id) {
    for (double b : ood) wins += a > b ? 1.0 : (a == b ? 0.5 : 0.0);
  }
  return wins / (static_cast<double>(id.size()) * static_cast<double>(ood.size()));
}

inline PointSet random_points(std::size_t n, std::size_t d, std::uint64_t seed,
                              double lo = 0.0, double hi = 1.0) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n * d);
  for (double& x : v) x = u(gen);
  return PointSet(n, d, std::move(v));
}

inline std::vector<double> random_vector(std::size_t d, std::mt19937_64& gen, double lo = 0.0,
                                         double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(d);
  for (double& x : v) x = u(gen);
  return v;
}

}  // namespace lensdepth::oracle
