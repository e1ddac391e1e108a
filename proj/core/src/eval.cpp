#include "lensdepth/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lensdepth/error.hpp"
#include "lensdepth/feature_io.hpp"
#include "lensdepth/parallel.hpp"

namespace lensdepth {

std::vector<double> midranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
    i = j + 1;
  }
  return ranks;
}

double auroc(std::span<const double> scores_id, std::span<const double> scores_ood) {
  if (scores_id.empty() || scores_ood.empty()) {
    throw UsageError("auroc needs at least one ID and one OOD score");
  }
  std::vector<double> all(scores_id.begin(), scores_id.end());
  all.insert(all.end(), scores_ood.begin(), scores_ood.end());
  for (double v : all) {
    if (std::isnan(v)) throw NumericError("auroc: NaN score");
  }
  const auto ranks = midranks(all);
  const auto n_id = static_cast<double>(scores_id.size());
  const auto n_ood = static_cast<double>(scores_ood.size());
  // Midranks are multiples of 0.5, so this sum is exact for any realistic n.
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < scores_id.size(); ++i) rank_sum += ranks[i];
  const double u = rank_sum - n_id * (n_id + 1.0) / 2.0;
  return u / (n_id * n_ood);
}

std::vector<CurvePoint> consistency_curve(std::span<const double> scores,
                                          const std::vector<bool>& correct, std::size_t steps) {
  if (scores.size() != correct.size()) {
    throw UsageError("consistency_curve: " + std::to_string(scores.size()) + " scores but " +
                     std::to_string(correct.size()) + " correctness flags");
  }
  if (steps < 2) throw UsageError("consistency_curve: steps must be >= 2");
  if (scores.empty()) throw UsageError("consistency_curve: no scores");
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] < scores[b]; });

  // suffix_correct[r] = correct items among order[r..n).
  std::vector<std::size_t> suffix_correct(n + 1, 0);
  for (std::size_t r = n; r-- > 0;) suffix_correct[r] = suffix_correct[r + 1] + (correct[order[r]] ? 1 : 0);

  std::vector<CurvePoint> curve;
  curve.reserve(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    const std::size_t rejected = n * k / steps;
    const double retained = static_cast<double>(n - rejected);
    curve.push_back({static_cast<double>(k) / static_cast<double>(steps),
                     static_cast<double>(suffix_correct[rejected]) / retained});
  }
  return curve;
}

EvalReport evaluate(std::span<const double> scores_id, std::span<const double> scores_ood,
                    const std::vector<bool>& id_correct, std::size_t steps) {
  if (!id_correct.empty() && id_correct.size() != scores_id.size()) {
    throw UsageError("evaluate: ID correctness flags do not match ID score count");
  }
  EvalReport r;
  r.auroc = auroc(scores_id, scores_ood);
  r.n_id = scores_id.size();
  r.n_ood = scores_ood.size();
  std::vector<double> all(scores_id.begin(), scores_id.end());
  all.insert(all.end(), scores_ood.begin(), scores_ood.end());
  std::vector<bool> correct = id_correct.empty() ? std::vector<bool>(r.n_id, true) : id_correct;
  correct.resize(r.n_id + r.n_ood, false);
  r.curve = consistency_curve(all, correct, steps);
  return r;
}

std::string report_to_json(const EvalReport& report, const std::string& config_json) {
  nlohmann::ordered_json j;
  j["auroc"] = report.auroc;
  auto& curve = j["curve"] = nlohmann::ordered_json::array();
  for (const auto& p : report.curve) curve.push_back({p.rejected_fraction, p.retained_accuracy});
  j["n_id"] = report.n_id;
  j["n_ood"] = report.n_ood;
  if (!config_json.empty()) j["config"] = nlohmann::ordered_json::parse(config_json);
  return j.dump(2) + "\n";
}

GridMap grid_map(const Scorer2d& scorer, std::size_t scorer_dim, const GridBounds& b,
                 std::size_t resolution) {
  if (scorer_dim != 2) {
    throw UsageError("grid maps need a 2-d scorer, got dimension " + std::to_string(scorer_dim));
  }
  if (resolution < 2) throw UsageError("grid resolution must be >= 2");
  if (!(b.xmax > b.xmin) || !(b.ymax > b.ymin)) throw UsageError("grid bounds are empty");
  GridMap g;
  g.resolution = resolution;
  const double dx = (b.xmax - b.xmin) / static_cast<double>(resolution);
  const double dy = (b.ymax - b.ymin) / static_cast<double>(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    g.xs.push_back(b.xmin + (static_cast<double>(i) + 0.5) * dx);
    g.ys.push_back(b.ymin + (static_cast<double>(i) + 0.5) * dy);
  }
  g.scores.resize(resolution * resolution);
  parallel_for(g.scores.size(), [&](std::size_t cell) {
    const double p[2] = {g.xs[cell % resolution], g.ys[cell / resolution]};
    g.scores[cell] = scorer(p);
  });
  return g;
}

std::string grid_to_csv(const GridMap& grid) {
  std::ostringstream out;
  out << "x,y,score\n";
  for (std::size_t r = 0; r < grid.resolution; ++r) {
    for (std::size_t c = 0; c < grid.resolution; ++c) {
      out << format_double(grid.xs[c]) << ',' << format_double(grid.ys[r]) << ','
          << format_double(grid.at(r, c)) << '\n';
    }
  }
  return out.str();
}

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw UsageError("spearman needs two equal-length samples of size >= 2");
  }
  const auto ra = midranks(a);
  const auto rb = midranks(b);
  const double n = static_cast<double>(a.size());
  const double mean = (n + 1.0) / 2.0;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - mean) * (rb[i] - mean);
    saa += (ra[i] - mean) * (ra[i] - mean);
    sbb += (rb[i] - mean) * (rb[i] - mean);
  }
  if (saa == 0.0 || sbb == 0.0) return (saa == sbb) ? 1.0 : 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace lensdepth
