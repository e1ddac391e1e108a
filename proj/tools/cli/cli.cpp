#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lensdepth/baselines.hpp"
#include "lensdepth/datasets.hpp"
#include "lensdepth/depth.hpp"
#include "lensdepth/error.hpp"
#include "lensdepth/eval.hpp"
#include "lensdepth/feature_io.hpp"
#include "lensdepth/parallel.hpp"
#include "lensdepth/random.hpp"

namespace lensdepth::cli {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kConfigFormatVersion = 1;

// ---------------------------------------------------------------------------
// small I/O helpers

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << text;
  if (!f) throw IoError("write failed for " + path);
}

// CSV outputs cannot carry the config inline; it goes next to the file, or
// to the log when writing to stdout.
void emit_config(const std::string& out_path, const json& config, std::ostream& err) {
  if (out_path.empty()) {
    err << "config: " << config.dump() << '\n';
  } else {
    write_text(out_path + ".config.json", config.dump(2) + "\n", err);
  }
}

std::string scores_to_csv(const std::vector<double>& scores) {
  std::ostringstream s;
  s << "row,score\n";
  for (std::size_t i = 0; i < scores.size(); ++i) s << i << ',' << format_double(scores[i]) << '\n';
  return s.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    out.push_back(field);
  }
  return out;
}

double parse_number(const std::string& s, const std::string& where) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw IoError("unparseable number '" + s + "' in " + where);
  }
  return v;
}

// Reads a two-column `row,<name>` CSV, returning the second column ordered
// by row index.
std::vector<double> read_indexed_column(const std::string& path, const std::string& name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) return {};
  const auto header = split_csv_line(line);
  if (header.size() != 2 || header[0] != "row" || header[1] != name) {
    throw IoError(path + ": expected header 'row," + name + "'");
  }
  std::vector<std::pair<std::size_t, double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    const std::string where = path + " line " + std::to_string(line_no);
    if (f.size() != 2) throw IoError("ragged row in " + where);
    const double idx = parse_number(f[0], where);
    const double v = parse_number(f[1], where);
    if (!std::isfinite(v)) throw NumericError("non-finite value in " + where);
    rows.emplace_back(static_cast<std::size_t>(idx), v);
  }
  std::sort(rows.begin(), rows.end(), [](auto& a, auto& b) { return a.first < b.first; });
  std::vector<double> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].first != i) throw IoError(path + ": row indices must be 0..n-1");
    out.push_back(rows[i].second);
  }
  return out;
}

bool is_empty_file(const std::string& path) {
  std::error_code ec;
  return fs::exists(path, ec) && fs::is_regular_file(path, ec) && fs::file_size(path, ec) == 0;
}

ReductionStrategy make_strategy(const std::string& name, std::size_t n, std::uint64_t seed,
                                std::size_t max_iters) {
  const auto kind = parse_strategy(name);
  if (!kind) throw UsageError("unknown strategy '" + name + "'");
  return {*kind, n, seed, max_iters};
}

// ---------------------------------------------------------------------------
// command option sets

struct GenerateOpts {
  std::string kind;
  std::size_t n = 0;
  std::optional<double> noise;
  std::uint64_t seed = 1;
  double turns = kSpiralDefaultTurns;
  std::string format;
  std::string out;
};

struct FitOpts {
  std::string features;
  double alpha = kDefaultAlpha;
  std::string strategy = "kmean-center";
  std::size_t n_inner = 1500;
  bool normalize = false;
  std::uint64_t seed = 0;
  std::size_t kmeans_iters = 100;
  std::size_t knn_edges = 0;
  std::string out;
};

struct ScoreOpts {
  std::string model;
  std::string features;
  std::string out;
};

struct EvalOpts {
  std::string id;
  std::string ood;
  std::string id_correct;
  std::size_t steps = 100;
  std::string out;
};

struct BaselineOpts {
  std::string method = "ld";
  std::string train;
  std::optional<std::size_t> k;
  bool pooled = false;
  double eps = -1.0;
  bool no_normalize = false;
};

struct GridOpts {
  std::string model;
  BaselineOpts baseline;
  std::optional<double> xmin, xmax, ymin, ymax;
  std::size_t resolution = 100;
  std::string out;
};

struct BaselineCmdOpts {
  BaselineOpts baseline;
  std::string features;
  FitOpts fit;
  std::string out;
};

struct ReduceBenchOpts {
  std::string features;
  std::string id;
  std::string ood;
  std::vector<std::string> strategies{"random", "kmean-center", "kmean-center-plus"};
  std::vector<std::size_t> sizes{500, 1000, 1500};
  double alpha = kDefaultAlpha;
  std::uint64_t seed = 0;
  bool normalize = false;
  std::size_t kmeans_iters = 100;
  std::string format = "csv";
  std::string out;
};

json base_config(const std::string& command) {
  json c;
  c["format_version"] = kConfigFormatVersion;
  c["command"] = command;
  c["threads"] = thread_count();
  return c;
}

json fit_config(const FitOpts& o) {
  json c = base_config("fit");
  c["features"] = o.features;
  c["alpha"] = o.alpha;
  c["strategy"] = o.strategy;
  c["n-inner"] = o.n_inner;
  c["normalize"] = o.normalize;
  c["seed"] = o.seed;
  c["kmeans-iters"] = o.kmeans_iters;
  c["knn-edges"] = o.knn_edges;
  return c;
}

FitOptions fit_options(const FitOpts& o) {
  FitOptions f;
  f.alpha = o.alpha;
  f.strategy = make_strategy(o.strategy, o.n_inner, o.seed, o.kmeans_iters);
  f.normalize = o.normalize;
  f.fermat.approx_knn_edges = o.knn_edges;
  return f;
}

void add_fit_flags(CLI::App* sub, FitOpts& o) {
  sub->add_option("--alpha", o.alpha, "Fermat exponent (>= 1)")->capture_default_str();
  sub->add_option("--strategy", o.strategy, "Inner point reduction")
      ->check(CLI::IsMember({"random", "kmean-center", "kmean-center-plus", "none"}))
      ->capture_default_str();
  sub->add_option("--n-inner", o.n_inner, "Inner points per class")->capture_default_str();
  sub->add_flag("--normalize", o.normalize, "L2-normalize features");
  sub->add_option("--seed", o.seed, "Reduction seed")->capture_default_str();
  sub->add_option("--kmeans-iters", o.kmeans_iters, "Lloyd iteration cap")->capture_default_str();
  sub->add_option("--knn-edges", o.knn_edges, "Approximate graph with k nearest edges (0 = exact)")
      ->capture_default_str();
}

void add_baseline_flags(CLI::App* sub, BaselineOpts& o) {
  sub->add_option("--train", o.train, "Labeled training features");
  sub->add_option("--k", o.k, "Neighbour rank for knn (no default)");
  sub->add_flag("--pooled", o.pooled, "Pooled covariance for mahalanobis");
  sub->add_option("--eps", o.eps, "Covariance ridge (negative = 1e-6 trace/d)");
  sub->add_flag("--no-normalize", o.no_normalize, "Skip l2 normalisation for knn");
}

json baseline_config(const BaselineOpts& o, json c) {
  c["method"] = o.method;
  c["train"] = o.train;
  if (o.k) c["k"] = *o.k;
  c["pooled"] = o.pooled;
  c["eps"] = o.eps;
  c["no-normalize"] = o.no_normalize;
  return c;
}

// A feature-space scorer behind a uniform interface.
struct BuiltScorer {
  std::function<double(std::span<const double>)> fn;
  std::size_t dim = 0;
};

BuiltScorer build_baseline(const BaselineOpts& o, const FitOpts& fit_opts, std::ostream& err) {
  if (o.method == "entropy") throw UsageError("entropy scores probability vectors, not features");
  if (o.train.empty()) throw UsageError("--train is required for method " + o.method);
  const PointSet train = load_features(o.train);
  if (train.empty()) throw UsageError("training file " + o.train + " has no rows");
  if (o.method == "ld") {
    auto s = std::make_shared<DepthScorer>(fit(train, fit_options(fit_opts)));
    err << "fitted " << s->clusters().size() << " clusters\n";
    return {[s](std::span<const double> x) { return score(*s, x); }, s->dim()};
  }
  if (o.method == "euclid") {
    if (!train.has_labels()) throw UsageError("euclid needs labeled training features");
    auto c = std::make_shared<PointSet>(class_centroids(train));
    return {[c](std::span<const double> x) { return euclidean_centroid_score(*c, x); }, train.dim()};
  }
  if (o.method == "mahalanobis") {
    if (!train.has_labels()) throw UsageError("mahalanobis needs labeled training features");
    auto stats = std::make_shared<std::vector<GaussianClassStats>>(
        fit_gaussian_stats(train, {o.pooled, o.eps}));
    return {[stats](std::span<const double> x) { return mahalanobis_score(*stats, x); },
            train.dim()};
  }
  if (o.method == "knn") {
    if (!o.k) throw UsageError("--k is required for knn");
    auto knn = std::make_shared<KnnScorer>(train, *o.k, !o.no_normalize);
    return {[knn](std::span<const double> x) { return (*knn)(x); }, train.dim()};
  }
  throw UsageError("unknown method '" + o.method + "'");
}

// ---------------------------------------------------------------------------
// commands

int cmd_generate(const GenerateOpts& o, std::ostream& out, std::ostream& err) {
  PointSet p;
  double noise = 0.0;
  std::size_t n = o.n;
  if (o.kind == "moons") {
    n = n ? n : kMoonsDefaultN;
    noise = o.noise.value_or(kMoonsDefaultNoise);
    p = two_moons(n, noise, o.seed);
  } else if (o.kind == "spiral") {
    n = n ? n : kSpiralDefaultN;
    noise = o.noise.value_or(kSpiralDefaultNoise);
    p = spiral(n, o.turns, noise, o.seed);
  } else if (o.kind == "gaussians3") {
    n = n ? n : 200;
    noise = o.noise.value_or(1.0);
    p = gaussians3(n, noise, o.seed);
  } else {
    throw UsageError("unknown --kind '" + o.kind + "'");
  }
  std::string format = o.format;
  if (format.empty()) {
    const auto ext = fs::path(o.out).extension();
    format = (ext == ".bin" || ext == ".ldfeat") ? "binary" : "csv";
  }
  json c = base_config("generate");
  c["kind"] = o.kind;
  c["n"] = n;
  c["noise"] = noise;
  c["seed"] = o.seed;
  c["turns"] = o.turns;
  c["format"] = format;
  c["prng"] = Rng::kName;

  std::ostringstream buf(std::ios::binary);
  if (format == "binary") {
    if (o.out.empty()) throw UsageError("binary output needs --out");
    write_features_binary(buf, p);
  } else {
    write_features_csv(buf, p);
  }
  write_text(o.out, buf.str(), out);
  emit_config(o.out, c, err);
  err << "generated " << p.size() << " x " << p.dim() << " (" << o.kind << ")\n";
  return kOk;
}

int cmd_fit(const FitOpts& o, std::ostream&, std::ostream& err) {
  const PointSet features = load_features(o.features);
  const auto start = std::chrono::steady_clock::now();
  const DepthScorer s = fit(features, fit_options(o));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  save_scorer(o.out, s, fit_config(o).dump());
  for (const auto& c : s.clusters()) {
    err << "class " << c.class_id << ": m = " << c.graph.size() << '\n';
  }
  err << "fit " << s.clusters().size() << " clusters in " << secs << " s -> " << o.out << '\n';
  return kOk;
}

int cmd_score(const ScoreOpts& o, std::ostream& out, std::ostream& err) {
  const DepthScorer s = load_scorer(o.model);
  json c = base_config("score");
  c["model"] = o.model;
  c["features"] = o.features;
  std::vector<double> scores;
  if (!is_empty_file(o.features)) {
    const PointSet x = load_features(o.features);
    if (!x.empty() && x.dim() != s.dim()) {
      throw UsageError("dimension mismatch: " + o.features + " has " + std::to_string(x.dim()) +
                       " features, model expects " + std::to_string(s.dim()));
    }
    scores = score_batch(s, x);
  }
  write_text(o.out, scores_to_csv(scores), out);
  emit_config(o.out, c, err);
  err << "scored " << scores.size() << " rows\n";
  return kOk;
}

int cmd_eval(const EvalOpts& o, std::ostream& out, std::ostream&) {
  const auto id = read_indexed_column(o.id, "score");
  const auto ood = read_indexed_column(o.ood, "score");
  if (id.empty() || ood.empty()) throw UsageError("eval needs non-empty ID and OOD score files");
  std::vector<bool> correct;
  if (!o.id_correct.empty()) {
    for (double v : read_indexed_column(o.id_correct, "correct")) correct.push_back(v != 0.0);
  }
  json c = base_config("eval");
  c["id"] = o.id;
  c["ood"] = o.ood;
  c["id-correct"] = o.id_correct;
  c["steps"] = o.steps;
  const EvalReport r = evaluate(id, ood, correct, o.steps);
  write_text(o.out, report_to_json(r, c.dump()), out);
  return kOk;
}

GridBounds auto_bounds(const PointSet& p) {
  double lo[2] = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  double hi[2] = {-lo[0], -lo[1]};
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t k = 0; k < 2; ++k) {
      lo[k] = std::min(lo[k], p.row(i)[k]);
      hi[k] = std::max(hi[k], p.row(i)[k]);
    }
  }
  // Bounding box dilated 2x about its centre.
  GridBounds b{};
  const double cx = (lo[0] + hi[0]) / 2, cy = (lo[1] + hi[1]) / 2;
  const double hx = std::max(hi[0] - lo[0], 1e-12), hy = std::max(hi[1] - lo[1], 1e-12);
  b.xmin = cx - hx;
  b.xmax = cx + hx;
  b.ymin = cy - hy;
  b.ymax = cy + hy;
  return b;
}

int cmd_grid(const GridOpts& o, std::ostream& out, std::ostream& err) {
  BuiltScorer scorer;
  PointSet extent;
  json c = base_config("grid");
  if (!o.model.empty()) {
    auto s = std::make_shared<DepthScorer>(load_scorer(o.model));
    scorer = {[s](std::span<const double> x) { return score(*s, x); }, s->dim()};
    c["model"] = o.model;
    if (s->dim() != 2) throw UsageError("grid needs a 2-d model, got dimension " + std::to_string(s->dim()));
    std::vector<double> pts;
    for (const auto& cl : s->clusters()) {
      const auto d = cl.graph.points().data();
      pts.insert(pts.end(), d.begin(), d.end());
    }
    const std::size_t rows = pts.size() / 2;
    extent = PointSet(rows, 2, std::move(pts));
  } else {
    if (o.baseline.method == "ld") throw UsageError("grid with method ld needs --model");
    scorer = build_baseline(o.baseline, FitOpts{}, err);
    c = baseline_config(o.baseline, c);
    if (scorer.dim != 2) throw UsageError("grid needs 2-d features, got dimension " + std::to_string(scorer.dim));
    extent = load_features(o.baseline.train);
  }
  GridBounds b = auto_bounds(extent);
  if (o.xmin) b.xmin = *o.xmin;
  if (o.xmax) b.xmax = *o.xmax;
  if (o.ymin) b.ymin = *o.ymin;
  if (o.ymax) b.ymax = *o.ymax;
  c["xmin"] = b.xmin;
  c["xmax"] = b.xmax;
  c["ymin"] = b.ymin;
  c["ymax"] = b.ymax;
  c["resolution"] = o.resolution;
  const GridMap g = grid_map(scorer.fn, scorer.dim, b, o.resolution);
  write_text(o.out, grid_to_csv(g), out);
  emit_config(o.out, c, err);
  return kOk;
}

int cmd_baseline(const BaselineCmdOpts& o, std::ostream& out, std::ostream& err) {
  json c = baseline_config(o.baseline, base_config("baseline"));
  c["features"] = o.features;
  std::vector<double> scores;
  if (!is_empty_file(o.features)) {
    const PointSet x = load_features(o.features);
    if (o.baseline.method == "entropy") {
      for (std::size_t i = 0; i < x.size(); ++i) scores.push_back(-softmax_entropy(x.row(i)));
    } else {
      if (o.baseline.method == "ld") c["fit"] = fit_config(o.fit);
      const BuiltScorer s = build_baseline(o.baseline, o.fit, err);
      if (!x.empty() && x.dim() != s.dim) {
        throw UsageError("dimension mismatch: features have " + std::to_string(x.dim()) +
                         " columns, training has " + std::to_string(s.dim));
      }
      scores.resize(x.size());
      parallel_for(x.size(), [&](std::size_t i) { scores[i] = s.fn(x.row(i)); });
    }
  }
  write_text(o.out, scores_to_csv(scores), out);
  emit_config(o.out, c, err);
  return kOk;
}

int cmd_reduce_bench(const ReduceBenchOpts& o, std::ostream& out, std::ostream& err) {
  for (const auto& name : o.strategies) {
    if (!parse_strategy(name)) throw UsageError("unknown strategy '" + name + "'");
  }
  const PointSet train = load_features(o.features);
  const PointSet id = load_features(o.id);
  const PointSet ood = load_features(o.ood);

  json c = base_config("reduce-bench");
  c["features"] = o.features;
  c["id"] = o.id;
  c["ood"] = o.ood;
  c["strategies"] = o.strategies;
  c["sizes"] = o.sizes;
  c["alpha"] = o.alpha;
  c["seed"] = o.seed;
  c["normalize"] = o.normalize;
  c["kmeans-iters"] = o.kmeans_iters;

  json cells = json::array();
  std::ostringstream csv;
  csv << "strategy,n,auroc\n";
  for (const auto& name : o.strategies) {
    for (std::size_t n : o.sizes) {
      FitOptions f;
      f.alpha = o.alpha;
      f.strategy = make_strategy(name, n, o.seed, o.kmeans_iters);
      f.normalize = o.normalize;
      const auto start = std::chrono::steady_clock::now();
      const DepthScorer s = fit(train, f);
      const double a = auroc(score_batch(s, id), score_batch(s, ood));
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      err << name << " n=" << n << ": auroc " << a << " (" << secs << " s)\n";
      cells.push_back({{"strategy", name}, {"n", n}, {"auroc", a}});
      csv << name << ',' << n << ',' << format_double(a) << '\n';
    }
  }
  if (o.format == "json") {
    json j;
    j["cells"] = cells;
    j["config"] = c;
    write_text(o.out, j.dump(2) + "\n", out);
  } else {
    write_text(o.out, csv.str(), out);
    emit_config(o.out, c, err);
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// --config handling

bool user_gave(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

// Expands a JSON object into flag tokens for `sub`. Flags given explicitly
// on the command line win.
std::vector<std::string> config_tokens(const json& cfg, const CLI::App* sub,
                                       const std::vector<std::string>& user_args) {
  if (!cfg.is_object()) throw UsageError("--config must contain a JSON object");
  std::vector<std::string> tokens;
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    if (sub->get_option_no_throw(flag) == nullptr) {
      throw UsageError("unknown config key '" + key + "' for command " + sub->get_name());
    }
    if (user_gave(user_args, flag)) continue;
    auto scalar = [](const json& v) {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number_float()) return format_double(v.get<double>());
      return v.dump();
    };
    if (value.is_boolean()) {
      if (value.get<bool>()) tokens.push_back(flag);
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) joined += (joined.empty() ? "" : ",") + scalar(v);
      tokens.push_back(flag);
      tokens.push_back(joined);
    } else {
      tokens.push_back(flag);
      tokens.push_back(scalar(value));
    }
  }
  return tokens;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lens depth out-of-distribution scoring with Fermat distances", "lensdepth"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = 0;
  std::string config_path;
  app.add_option("--threads", threads, "Worker threads (default: hardware count)")
      ->envname("LD_THREADS");
  app.add_option("--config", config_path, "JSON file with flag values for the command");

  GenerateOpts gen;
  auto* generate = app.add_subcommand("generate", "Write a toy dataset");
  generate->add_option("--kind", gen.kind, "moons | spiral | gaussians3")
      ->required()
      ->check(CLI::IsMember({"moons", "spiral", "gaussians3"}));
  generate->add_option("--n", gen.n, "Points (per cluster for gaussians3)");
  generate->add_option("--noise", gen.noise, "Noise scale (sigma for gaussians3)");
  generate->add_option("--seed", gen.seed, "PRNG seed")->capture_default_str();
  generate->add_option("--turns", gen.turns, "Spiral turns")->capture_default_str();
  generate->add_option("--format", gen.format, "csv | binary (default by extension)")
      ->check(CLI::IsMember({"csv", "binary"}));
  generate->add_option("--out", gen.out, "Output file (default stdout)");

  FitOpts fit_o;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a lens depth model");
  fit_cmd->add_option("--features", fit_o.features, "Labeled feature file")->required();
  add_fit_flags(fit_cmd, fit_o);
  fit_cmd->add_option("--out", fit_o.out, "Model directory")->required();

  ScoreOpts score_o;
  auto* score_cmd = app.add_subcommand("score", "Score features with a fitted model");
  score_cmd->add_option("--model", score_o.model, "Model directory")->required();
  score_cmd->add_option("--features", score_o.features, "Feature file")->required();
  score_cmd->add_option("--out", score_o.out, "Score CSV (default stdout)");

  EvalOpts eval_o;
  auto* eval_cmd = app.add_subcommand("eval", "AUROC and consistency curve");
  eval_cmd->add_option("--id", eval_o.id, "In-distribution scores CSV")->required();
  eval_cmd->add_option("--ood", eval_o.ood, "Out-of-distribution scores CSV")->required();
  eval_cmd->add_option("--id-correct", eval_o.id_correct, "CSV row,correct for ID predictions");
  eval_cmd->add_option("--steps", eval_o.steps, "Rejection grid size")->capture_default_str();
  eval_cmd->add_option("--out", eval_o.out, "Report JSON (default stdout)");

  GridOpts grid_o;
  auto* grid_cmd = app.add_subcommand("grid", "Score a 2-d lattice");
  grid_cmd->add_option("--model", grid_o.model, "Model directory (lens depth)");
  grid_cmd->add_option("--method", grid_o.baseline.method, "euclid | mahalanobis | knn")
      ->check(CLI::IsMember({"ld", "euclid", "mahalanobis", "knn"}));
  add_baseline_flags(grid_cmd, grid_o.baseline);
  grid_cmd->add_option("--xmin", grid_o.xmin);
  grid_cmd->add_option("--xmax", grid_o.xmax);
  grid_cmd->add_option("--ymin", grid_o.ymin);
  grid_cmd->add_option("--ymax", grid_o.ymax);
  grid_cmd->add_option("--resolution", grid_o.resolution)->capture_default_str();
  grid_cmd->add_option("--out", grid_o.out, "Grid CSV (default stdout)");

  BaselineCmdOpts base_o;
  auto* base_cmd = app.add_subcommand("baseline", "Score features with a chosen method");
  base_cmd->add_option("--method", base_o.baseline.method)
      ->required()
      ->check(CLI::IsMember({"ld", "euclid", "mahalanobis", "knn", "entropy"}));
  add_baseline_flags(base_cmd, base_o.baseline);
  add_fit_flags(base_cmd, base_o.fit);
  base_cmd->add_option("--features", base_o.features, "Query features or probability rows")
      ->required();
  base_cmd->add_option("--out", base_o.out, "Score CSV (default stdout)");

  ReduceBenchOpts rb;
  auto* rb_cmd = app.add_subcommand("reduce-bench", "AUROC per reduction strategy and size");
  rb_cmd->add_option("--features", rb.features, "Labeled training features")->required();
  rb_cmd->add_option("--id", rb.id, "ID test features")->required();
  rb_cmd->add_option("--ood", rb.ood, "OOD test features")->required();
  rb_cmd->add_option("--strategies", rb.strategies)
      ->delimiter(',')
      ->check(CLI::IsMember({"random", "kmean-center", "kmean-center-plus", "none"}));
  rb_cmd->add_option("--sizes", rb.sizes)->delimiter(',');
  rb_cmd->add_option("--alpha", rb.alpha)->capture_default_str();
  rb_cmd->add_option("--seed", rb.seed)->capture_default_str();
  rb_cmd->add_flag("--normalize", rb.normalize);
  rb_cmd->add_option("--kmeans-iters", rb.kmeans_iters)->capture_default_str();
  rb_cmd->add_option("--format", rb.format)->check(CLI::IsMember({"csv", "json"}));
  rb_cmd->add_option("--out", rb.out);

  try {
    std::vector<std::string> argv = args;
    // --config is resolved before parsing so its values flow through the
    // same validators as flags.
    for (std::size_t i = 0; i + 1 < argv.size(); ++i) {
      if (argv[i] != "--config") continue;
      std::ifstream f(argv[i + 1]);
      if (!f) throw IoError("cannot open config " + argv[i + 1]);
      json cfg;
      try {
        cfg = json::parse(f);
      } catch (const json::exception& e) {
        throw UsageError("malformed config " + argv[i + 1] + ": " + e.what());
      }
      const auto sub_it = std::find_if(argv.begin(), argv.end(), [&](const std::string& a) {
        return app.get_subcommand_no_throw(a) != nullptr;
      });
      if (sub_it == argv.end()) throw UsageError("--config needs a command");
      const auto tokens = config_tokens(cfg, app.get_subcommand(*sub_it), argv);
      argv.insert(sub_it + 1, tokens.begin(), tokens.end());
      break;
    }
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  }

  try {
    set_thread_count(threads);
    if (generate->parsed()) return cmd_generate(gen, out, err);
    if (fit_cmd->parsed()) return cmd_fit(fit_o, out, err);
    if (score_cmd->parsed()) return cmd_score(score_o, out, err);
    if (eval_cmd->parsed()) return cmd_eval(eval_o, out, err);
    if (grid_cmd->parsed()) return cmd_grid(grid_o, out, err);
    if (base_cmd->parsed()) return cmd_baseline(base_o, out, err);
    if (rb_cmd->parsed()) return cmd_reduce_bench(rb, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace lensdepth::cli
