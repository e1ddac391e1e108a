#include "lensdepth/depth.hpp"

#include <algorithm>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "lensdepth/error.hpp"
#include "lensdepth/parallel.hpp"
#include "lensdepth/random.hpp"

namespace lensdepth {

std::uint64_t lens_count_from_distances(const DistanceMatrix& pairwise,
                                        std::span<const double> dx) {
  const std::size_t m = pairwise.size();
  if (dx.size() != m) throw UsageError("lens_count: distance vector has wrong length");
  // A point farther than every radius cannot be a lens endpoint of a pair
  // containing x.
  const double max_radius = pairwise.max_entry();
  std::vector<std::size_t> candidates;
  candidates.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (dx[i] <= max_radius) candidates.push_back(i);
  }
  const auto lower = pairwise.lower_triangle();
  std::uint64_t count = 0;
  for (std::size_t b = 1; b < candidates.size(); ++b) {
    const std::size_t j = candidates[b];
    const double* row = lower.data() + j * (j - 1) / 2;
    for (std::size_t a = 0; a < b; ++a) {
      const std::size_t i = candidates[a];
      if (std::max(dx[i], dx[j]) <= row[i]) ++count;
    }
  }
  return count;
}

std::uint64_t lens_count(const FermatGraph& g, std::span<const double> x, DistanceMode mode) {
  const auto dx = mode == DistanceMode::kModified ? modified_fermat_to_all(g, x)
                                                  : unmodified_fermat_to_all(g, x);
  return lens_count_from_distances(g.pairwise(), dx);
}

double lens_depth(const FermatGraph& g, std::span<const double> x, DistanceMode mode) {
  const auto pairs = static_cast<double>(lower_triangle_size(g.size()));
  return static_cast<double>(lens_count(g, x, mode)) / pairs;
}

DepthScorer::DepthScorer(std::vector<ClusterModel> clusters, double alpha,
                         ReductionStrategy strategy, bool normalize)
    : clusters_(std::move(clusters)), alpha_(alpha), strategy_(strategy), normalize_(normalize) {
  if (clusters_.empty()) throw UsageError("a depth scorer needs at least one cluster");
  for (std::size_t c = 0; c < clusters_.size(); ++c) {
    const auto& g = clusters_[c].graph;
    if (g.alpha() != alpha_) throw UsageError("all clusters must share alpha");
    if (g.dim() != clusters_.front().graph.dim()) {
      throw UsageError("all clusters must share dimensionality");
    }
    for (std::size_t o = 0; o < c; ++o) {
      if (clusters_[o].class_id == clusters_[c].class_id) {
        throw UsageError("duplicate class id " + std::to_string(clusters_[c].class_id));
      }
    }
  }
}

std::vector<double> DepthScorer::cluster_depths(std::span<const double> x) const {
  if (x.size() != dim()) {
    throw UsageError("dimension mismatch: query has " + std::to_string(x.size()) +
                     ", model expects " + std::to_string(dim()));
  }
  std::vector<double> normalized;
  if (normalize_) {
    normalized = l2_normalize(x);
    x = normalized;
  }
  std::vector<double> out;
  out.reserve(clusters_.size());
  for (const auto& c : clusters_) out.push_back(lens_depth(c.graph, x, DistanceMode::kModified));
  return out;
}

DepthScorer fit(const PointSet& features, const FitOptions& options) {
  if (!(options.alpha >= 1.0)) {
    throw UsageError("alpha must be >= 1, got " + std::to_string(options.alpha));
  }
  if (!features.has_labels()) throw UsageError("fit needs labeled features");
  if (features.empty()) throw UsageError("fit needs at least one feature row");
  const PointSet data = options.normalize ? l2_normalize(features) : features;
  const auto& labels = data.labels();

  std::vector<ClusterModel> clusters;
  for (ClassId id : data.classes()) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == id) rows.push_back(i);
    }
    if (rows.size() < 2) {
      throw UsageError("class " + std::to_string(id) + " has " + std::to_string(rows.size()) +
                       " point(s); at least 2 are needed");
    }
    ReductionStrategy per_class = options.strategy;
    per_class.seed = derive_seed(options.strategy.seed, id);
    PointSet inner = apply_reduction(data.select(rows), per_class);
    if (inner.size() < 2) {
      throw UsageError("class " + std::to_string(id) + " kept fewer than 2 inner points");
    }
    clusters.push_back({id, build_fermat_graph(std::move(inner), options.alpha, options.fermat)});
  }
  return DepthScorer(std::move(clusters), options.alpha, options.strategy, options.normalize);
}

double score(const DepthScorer& s, std::span<const double> x) {
  const auto depths = s.cluster_depths(x);
  return *std::max_element(depths.begin(), depths.end());
}

std::vector<double> score_batch(const DepthScorer& s, const PointSet& x) {
  if (!x.empty() && x.dim() != s.dim()) {
    throw UsageError("dimension mismatch: features have " + std::to_string(x.dim()) +
                     " columns, model expects " + std::to_string(s.dim()));
  }
  std::vector<double> out(x.size());
  parallel_for(x.size(), [&](std::size_t i) { out[i] = score(s, x.row(i)); });
  return out;
}

namespace {

std::string graph_file(ClassId id) { return "class_" + std::to_string(id) + ".ldgraf"; }

}  // namespace

void save_scorer(const std::filesystem::path& dir, const DepthScorer& s,
                 const std::string& config_json) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create model directory " + dir.string() + ": " + ec.message());

  nlohmann::ordered_json meta;
  meta["format_version"] = kModelFormatVersion;
  meta["alpha"] = s.alpha();
  meta["strategy"] = std::string(strategy_name(s.strategy().kind));
  meta["n_inner"] = s.strategy().n;
  meta["kmeans_max_iters"] = s.strategy().max_iters;
  meta["kmeans_init"] = "greedy-kmeans++";
  meta["normalize"] = s.normalize();
  meta["seed"] = s.strategy().seed;
  meta["prng"] = Rng::kName;
  meta["dim"] = s.dim();
  auto& ids = meta["class_ids"] = nlohmann::ordered_json::array();
  auto& files = meta["graphs"] = nlohmann::ordered_json::array();
  auto& sizes = meta["inner_points"] = nlohmann::ordered_json::array();
  for (const auto& c : s.clusters()) {
    ids.push_back(c.class_id);
    files.push_back(graph_file(c.class_id));
    sizes.push_back(c.graph.size());
    save_graph(dir / graph_file(c.class_id), c.graph);
  }
  if (!config_json.empty()) meta["config"] = nlohmann::ordered_json::parse(config_json);

  std::ofstream out(dir / "model.json", std::ios::binary);
  if (!out) throw IoError("cannot write " + (dir / "model.json").string());
  out << meta.dump(2) << '\n';
}

DepthScorer load_scorer(const std::filesystem::path& dir) {
  std::ifstream in(dir / "model.json", std::ios::binary);
  if (!in) throw IoError("cannot open " + (dir / "model.json").string());
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(in);
    if (meta.at("format_version").get<int>() != kModelFormatVersion) {
      throw IoError("unsupported model format_version " + meta.at("format_version").dump());
    }
    const double alpha = meta.at("alpha").get<double>();
    const auto kind = parse_strategy(meta.at("strategy").get<std::string>());
    if (!kind) throw IoError("unknown strategy in model.json");
    ReductionStrategy strategy{*kind, meta.at("n_inner").get<std::size_t>(),
                               meta.at("seed").get<std::uint64_t>(),
                               meta.at("kmeans_max_iters").get<std::size_t>()};
    const auto ids = meta.at("class_ids").get<std::vector<ClassId>>();
    std::vector<ClusterModel> clusters;
    for (ClassId id : ids) clusters.push_back({id, load_graph(dir / graph_file(id))});
    return DepthScorer(std::move(clusters), alpha, strategy, meta.at("normalize").get<bool>());
  } catch (const nlohmann::json::exception& e) {
    throw IoError("malformed model.json: " + std::string(e.what()));
  }
}

}  // namespace lensdepth
