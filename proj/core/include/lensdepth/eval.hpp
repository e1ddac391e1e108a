#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lensdepth {

/// Mann-Whitney estimate of P(id > ood) + 0.5 P(id == ood), by midranks.
double auroc(std::span<const double> scores_id, std::span<const double> scores_ood);

struct CurvePoint {
  double rejected_fraction;
  double retained_accuracy;
};

/// Accuracy of the retained items after rejecting the lowest-scored
/// floor(N * k / steps) items, for k = 0 .. steps-1. Score ties are rejected
/// in input order.
std::vector<CurvePoint> consistency_curve(std::span<const double> scores,
                                          const std::vector<bool>& correct,
                                          std::size_t steps = 100);

struct EvalReport {
  double auroc = 0.0;
  std::vector<CurvePoint> curve;
  std::size_t n_id = 0;
  std::size_t n_ood = 0;
};

/// AUROC plus the consistency curve where OOD items always count as wrong.
/// `id_correct` may be empty (all ID predictions correct).
EvalReport evaluate(std::span<const double> scores_id,
                    std::span<const double> scores_ood,
                    const std::vector<bool>& id_correct, std::size_t steps = 100);

/// {"auroc":..,"curve":[[r,acc],..],"n_id":..,"n_ood":..}; `config_json`
/// is embedded under "config" when non-empty.
std::string report_to_json(const EvalReport& report, const std::string& config_json = {});

struct GridBounds {
  double xmin, xmax, ymin, ymax;
};

using Scorer2d = std::function<double(std::span<const double>)>;

struct GridMap {
  std::size_t resolution = 0;
  std::vector<double> xs;      // cell-centre x per column
  std::vector<double> ys;      // cell-centre y per row
  std::vector<double> scores;  // row-major, rows along y

  double at(std::size_t row, std::size_t col) const {
    return scores[row * resolution + col];
  }
};

/// Scores the centres of a resolution x resolution lattice over `bounds`.
GridMap grid_map(const Scorer2d& scorer, std::size_t scorer_dim,
                 const GridBounds& bounds, std::size_t resolution);

/// CSV `x,y,score`, one line per cell in row-major order.
std::string grid_to_csv(const GridMap& grid);

/// Average ranks (1-based) with ties sharing their mean rank.
std::vector<double> midranks(std::span<const double> v);

/// Spearman correlation: Pearson correlation of midranks.
double spearman(std::span<const double> a, std::span<const double> b);

}  // namespace lensdepth
