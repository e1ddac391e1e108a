#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "lensdepth/distance_matrix.hpp"
#include "lensdepth/point_set.hpp"

namespace lensdepth {

struct FermatOptions {
  /// When > 0, each vertex only keeps edges to its k nearest neighbours
  /// (symmetrized). Approximate; the exact complete graph is the default.
  std::size_t approx_knn_edges = 0;
};

/// Power-weighted hop cost |u - v|^alpha, with 0 for coincident points.
double fermat_edge_weight(double euclidean_distance, double alpha);

/// All-pairs sample Fermat distances over a fixed set of inner points: the
/// cheapest path between two points through the set where each hop costs
/// its Euclidean length raised to alpha.
class FermatGraph {
 public:
  FermatGraph(PointSet points, double alpha, DistanceMatrix pairwise);

  const PointSet& points() const { return points_; }
  double alpha() const { return alpha_; }
  const DistanceMatrix& pairwise() const { return pairwise_; }
  std::size_t size() const { return points_.size(); }
  std::size_t dim() const { return points_.dim(); }

  friend bool operator==(const FermatGraph&, const FermatGraph&) = default;

 private:
  PointSet points_;
  double alpha_;
  DistanceMatrix pairwise_;
};

/// Runs one single-source shortest-path search per inner point.
/// Requires at least two points and alpha >= 1.
FermatGraph build_fermat_graph(PointSet q, double alpha,
                               const FermatOptions& options = {});

double fermat_between_samples(const FermatGraph& g, std::size_t i, std::size_t j);

/// Query-to-sample distances where the entry point into the sample is part
/// of the optimisation: out[y] = min_q |x - q|^alpha + D(q, y).
std::vector<double> modified_fermat_to_all(const FermatGraph& g,
                                           std::span<const double> x);

/// Query-to-sample distances that snap the query to its nearest inner point
/// first. Constant over each Voronoi cell of the inner points.
std::vector<double> unmodified_fermat_to_all(const FermatGraph& g,
                                             std::span<const double> x);

/// Path reconstruction for plotting: vertex sequence i -> j, ties resolved
/// towards the lowest predecessor index.
std::vector<std::size_t> fermat_path(const FermatGraph& g, std::size_t i,
                                     std::size_t j);

inline constexpr char kGraphMagic[8] = {'L', 'D', 'G', 'R', 'A', 'F', '0', '1'};

void write_graph(std::ostream& out, const FermatGraph& g);
FermatGraph read_graph(std::istream& in);
void save_graph(const std::filesystem::path& path, const FermatGraph& g);
FermatGraph load_graph(const std::filesystem::path& path);

}  // namespace lensdepth
