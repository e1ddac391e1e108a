#include "lensdepth/fermat.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <utility>

#include "binary_io.hpp"
#include "lensdepth/error.hpp"
#include "lensdepth/parallel.hpp"

namespace lensdepth {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_alpha(double alpha) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
    throw UsageError("alpha must be a finite value >= 1, got " + std::to_string(alpha));
  }
}

void check_query(const FermatGraph& g, std::span<const double> x) {
  if (x.size() != g.dim()) {
    throw UsageError("dimension mismatch: query has " + std::to_string(x.size()) +
                     ", graph points have " + std::to_string(g.dim()));
  }
}

// Edge weights of the search graph. Dense by default; sparse adjacency when
// the kNN approximation is requested.
struct EdgeSet {
  std::size_t m = 0;
  std::vector<double> dense;  // m x m row-major
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adjacency;

  bool sparse() const { return !adjacency.empty(); }
};

EdgeSet make_edges(const PointSet& q, double alpha, std::size_t knn) {
  const std::size_t m = q.size();
  EdgeSet e;
  e.m = m;
  if (knn == 0 || knn >= m - 1) {
    e.dense.assign(m * m, 0.0);
    parallel_for(m, [&](std::size_t i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (j != i) e.dense[i * m + j] = fermat_edge_weight(euclidean(q.row(i), q.row(j)), alpha);
      }
    });
    return e;
  }
  std::vector<std::vector<std::uint32_t>> nbrs(m);
  parallel_for(m, [&](std::size_t i) {
    std::vector<std::pair<double, std::uint32_t>> d;
    d.reserve(m - 1);
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i) d.emplace_back(squared_euclidean(q.row(i), q.row(j)), static_cast<std::uint32_t>(j));
    }
    std::partial_sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(knn), d.end());
    for (std::size_t t = 0; t < knn; ++t) nbrs[i].push_back(d[t].second);
  });
  std::vector<std::vector<std::uint32_t>> sym(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (auto j : nbrs[i]) {
      sym[i].push_back(j);
      sym[j].push_back(static_cast<std::uint32_t>(i));
    }
  }
  e.adjacency.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::sort(sym[i].begin(), sym[i].end());
    sym[i].erase(std::unique(sym[i].begin(), sym[i].end()), sym[i].end());
    for (auto j : sym[i]) {
      e.adjacency[i].emplace_back(j, fermat_edge_weight(euclidean(q.row(i), q.row(j)), alpha));
    }
  }
  return e;
}

using HeapEntry = std::pair<double, std::uint32_t>;
using MinHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>>;

// Single-source search from `source`. Stops once every vertex with index
// < `stop_below` is settled (pass m to settle everything). When `pred` is
// non-null it receives predecessors, preferring the lowest index on ties.
void dijkstra(const EdgeSet& e, std::size_t source, std::size_t stop_below,
              std::vector<double>& dist, std::vector<std::uint32_t>* pred) {
  const std::size_t m = e.m;
  dist.assign(m, kInf);
  std::vector<char> settled(m, 0);
  if (pred) pred->assign(m, static_cast<std::uint32_t>(source));
  std::size_t remaining = std::min(stop_below, m);
  dist[source] = 0.0;
  MinHeap heap;
  heap.emplace(0.0, static_cast<std::uint32_t>(source));
  auto relax = [&](std::uint32_t u, std::size_t v, double w) {
    const double cand = dist[u] + w;
    if (cand < dist[v]) {
      dist[v] = cand;
      if (pred) (*pred)[v] = u;
      if (e.sparse()) heap.emplace(cand, static_cast<std::uint32_t>(v));
    } else if (pred && cand == dist[v] && u < (*pred)[v] && !settled[v]) {
      (*pred)[v] = u;
    }
  };
  if (!e.sparse()) {
    // Complete graph: a linear scan over the unsettled vertices picks the
    // next one for the same O(m) cost as relaxing its edges, so no heap.
    // The scan is fused into the relaxation loop.
    std::vector<std::uint32_t> active;
    active.reserve(m);
    for (std::size_t v = 0; v < m; ++v) {
      if (v != source) active.push_back(static_cast<std::uint32_t>(v));
    }
    std::uint32_t u = static_cast<std::uint32_t>(source);
    for (;;) {
      settled[u] = 1;
      if (u < stop_below && --remaining == 0) break;
      const double* row = e.dense.data() + static_cast<std::size_t>(u) * m;
      std::size_t best = active.size();
      double best_dist = kInf;
      const double du = dist[u];
      if (pred) {
        for (const std::uint32_t v : active) relax(u, v, row[v]);
      }
      for (std::size_t k = 0; k < active.size(); ++k) {
        const std::uint32_t v = active[k];
        const double d = std::min(dist[v], du + row[v]);
        dist[v] = d;
        if (d < best_dist) {
          best_dist = d;
          best = k;
        }
      }
      if (best == active.size()) break;
      u = active[best];
      active[best] = active.back();
      active.pop_back();
    }
    return;
  }
  while (!heap.empty() && remaining > 0) {
    const auto [du, u] = heap.top();
    heap.pop();
    if (settled[u] || du > dist[u]) continue;
    settled[u] = 1;
    if (u < stop_below) --remaining;
    for (const auto& [v, w] : e.adjacency[u]) {
      if (!settled[v]) relax(u, v, w);
    }
  }
}

}  // namespace

double fermat_edge_weight(double euclidean_distance, double alpha) {
  if (euclidean_distance == 0.0) return 0.0;
  if (alpha == 1.0) return euclidean_distance;
  return std::exp(alpha * std::log(euclidean_distance));
}

FermatGraph::FermatGraph(PointSet points, double alpha, DistanceMatrix pairwise)
    : points_(std::move(points)), alpha_(alpha), pairwise_(std::move(pairwise)) {
  check_alpha(alpha_);
  if (points_.size() < 2) throw UsageError("a Fermat graph needs at least 2 points");
  if (pairwise_.size() != points_.size()) {
    throw UsageError("pairwise matrix size does not match point count");
  }
}

FermatGraph build_fermat_graph(PointSet q, double alpha, const FermatOptions& options) {
  check_alpha(alpha);
  if (q.size() < 2) {
    throw UsageError("a Fermat graph needs at least 2 points, got " + std::to_string(q.size()));
  }
  q = q.has_labels() ? q.without_labels() : std::move(q);
  const std::size_t m = q.size();
  std::vector<double> lower(lower_triangle_size(m));

  if (alpha == 1.0 && options.approx_knn_edges == 0) {
    // Triangle inequality: the direct edge is always a shortest path.
    parallel_for(m, [&](std::size_t i) {
      for (std::size_t j = 0; j < i; ++j) lower[i * (i - 1) / 2 + j] = euclidean(q.row(i), q.row(j));
    });
  } else {
    const EdgeSet edges = make_edges(q, alpha, options.approx_knn_edges);
    parallel_for(m, [&](std::size_t s) {
      if (s == 0) return;
      std::vector<double> dist;
      dijkstra(edges, s, s, dist, nullptr);
      for (std::size_t j = 0; j < s; ++j) lower[s * (s - 1) / 2 + j] = dist[j];
    });
    for (double v : lower) {
      if (!std::isfinite(v)) {
        throw NumericError("sparsified Fermat graph is disconnected; increase approx_knn_edges");
      }
    }
  }
  return FermatGraph(std::move(q), alpha, DistanceMatrix(m, std::move(lower)));
}

double fermat_between_samples(const FermatGraph& g, std::size_t i, std::size_t j) {
  return g.pairwise().at(i, j);
}

std::vector<double> unmodified_fermat_to_all(const FermatGraph& g, std::span<const double> x) {
  check_query(g, x);
  std::vector<double> out(g.size());
  g.pairwise().copy_row(nearest_particle(x, g.points()).index, out);
  return out;
}

std::vector<double> modified_fermat_to_all(const FermatGraph& g, std::span<const double> x) {
  check_query(g, x);
  const std::size_t m = g.size();
  std::vector<double> out(m);
  if (auto row = find_exact_row(x, g.points())) {
    g.pairwise().copy_row(*row, out);
    return out;
  }
  std::vector<double> snap(m);
  for (std::size_t q = 0; q < m; ++q) {
    snap[q] = fermat_edge_weight(euclidean(x, g.points().row(q)), g.alpha());
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return snap[a] < snap[b]; });

  // Entry points are visited by increasing snap cost; once that cost reaches
  // the largest current value no later entry point can improve any target.
  std::fill(out.begin(), out.end(), kInf);
  std::vector<double> row(m);
  double worst = kInf;
  for (std::size_t q : order) {
    if (snap[q] >= worst) break;
    g.pairwise().copy_row(q, row);
    worst = 0.0;
    for (std::size_t y = 0; y < m; ++y) {
      const double cand = snap[q] + row[y];
      if (cand < out[y]) out[y] = cand;
      worst = std::max(worst, out[y]);
    }
  }
  return out;
}

std::vector<std::size_t> fermat_path(const FermatGraph& g, std::size_t i, std::size_t j) {
  const std::size_t m = g.size();
  if (i >= m || j >= m) throw UsageError("fermat_path: index out of range");
  const EdgeSet edges = make_edges(g.points(), g.alpha(), 0);
  std::vector<double> dist;
  std::vector<std::uint32_t> pred;
  dijkstra(edges, i, m, dist, &pred);
  std::vector<std::size_t> path{j};
  while (path.back() != i) path.push_back(pred[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

void write_graph(std::ostream& out, const FermatGraph& g) {
  out.write(kGraphMagic, 8);
  detail::write_le<std::uint64_t>(out, g.size());
  detail::write_le<std::uint64_t>(out, g.dim());
  detail::write_le<double>(out, g.alpha());
  for (double v : g.points().data()) detail::write_le<double>(out, v);
  for (double v : g.pairwise().lower_triangle()) detail::write_le<double>(out, v);
}

FermatGraph read_graph(std::istream& in) {
  detail::expect_magic(in, kGraphMagic);
  const auto m = detail::read_le<std::uint64_t>(in, "point count");
  const auto d = detail::read_le<std::uint64_t>(in, "dimension");
  const auto alpha = detail::read_le<double>(in, "alpha");
  if (m < 2 || d == 0) throw IoError("graph file has invalid shape");
  std::vector<double> points(m * d);
  for (double& v : points) v = detail::read_le<double>(in, "points");
  std::vector<double> lower(lower_triangle_size(m));
  for (double& v : lower) v = detail::read_le<double>(in, "pairwise entries");
  return FermatGraph(PointSet(m, d, std::move(points)), alpha,
                     DistanceMatrix(m, std::move(lower)));
}

void save_graph(const std::filesystem::path& path, const FermatGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write graph file " + path.string());
  write_graph(out, g);
  if (!out) throw IoError("write failed for " + path.string());
}

FermatGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open graph file " + path.string());
  return read_graph(in);
}

}  // namespace lensdepth
