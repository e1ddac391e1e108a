#include "lensdepth/point_set.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lensdepth/error.hpp"

namespace lensdepth {

PointSet::PointSet(std::size_t rows, std::size_t dim, std::vector<double> data,
                   std::optional<std::vector<ClassId>> labels)
    : rows_(rows), dim_(dim), data_(std::move(data)), labels_(std::move(labels)) {
  if (dim_ == 0) throw UsageError("point set dimension must be >= 1");
  if (data_.size() != rows_ * dim_) {
    throw UsageError("point set data has " + std::to_string(data_.size()) +
                     " values, expected " + std::to_string(rows_ * dim_));
  }
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (!std::isfinite(data_[k])) {
      throw NumericError("non-finite value at row " + std::to_string(k / dim_) +
                         ", column " + std::to_string(k % dim_));
    }
  }
  if (labels_ && labels_->size() != rows_) {
    throw UsageError("label count " + std::to_string(labels_->size()) +
                     " does not match row count " + std::to_string(rows_));
  }
}

const std::vector<ClassId>& PointSet::labels() const {
  if (!labels_) throw UsageError("point set has no labels");
  return *labels_;
}

std::vector<ClassId> PointSet::classes() const {
  std::vector<ClassId> ids = labels();
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

PointSet PointSet::select(std::span<const std::size_t> indices) const {
  std::vector<double> out;
  out.reserve(indices.size() * dim_);
  std::optional<std::vector<ClassId>> out_labels;
  if (labels_) out_labels.emplace().reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= rows_) throw UsageError("row index " + std::to_string(i) + " out of range");
    auto r = row(i);
    out.insert(out.end(), r.begin(), r.end());
    if (labels_) out_labels->push_back((*labels_)[i]);
  }
  return PointSet(indices.size(), dim_, std::move(out), std::move(out_labels));
}

PointSet PointSet::without_labels() const { return PointSet(rows_, dim_, data_); }

double squared_euclidean(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw UsageError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
  }
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double t = a[k] - b[k];
    s += t * t;
  }
  return s;
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_euclidean(a, b));
}

NearestParticle nearest_particle(std::span<const double> x, const PointSet& q) {
  if (q.empty()) throw UsageError("nearest_particle: empty point set");
  if (x.size() != q.dim()) {
    throw UsageError("dimension mismatch: query has " + std::to_string(x.size()) +
                     ", points have " + std::to_string(q.dim()));
  }
  std::size_t best = 0;
  double best_sq = squared_euclidean(x, q.row(0));
  for (std::size_t i = 1; i < q.size(); ++i) {
    const double d = squared_euclidean(x, q.row(i));
    if (d < best_sq) {
      best_sq = d;
      best = i;
    }
  }
  return {best, std::sqrt(best_sq)};
}

std::vector<double> l2_normalize(std::span<const double> x) {
  double sq = 0.0;
  for (double v : x) sq += v * v;
  if (sq == 0.0) throw UsageError("cannot l2-normalize an all-zero vector");
  const double norm = std::sqrt(sq);
  std::vector<double> out(x.begin(), x.end());
  for (double& v : out) v /= norm;
  return out;
}

PointSet l2_normalize(const PointSet& p) {
  std::vector<double> out;
  out.reserve(p.size() * p.dim());
  for (std::size_t i = 0; i < p.size(); ++i) {
    double sq = 0.0;
    for (double v : p.row(i)) sq += v * v;
    if (sq == 0.0) {
      throw UsageError("cannot l2-normalize row " + std::to_string(i) + ": all zeros");
    }
    const double norm = std::sqrt(sq);
    for (double v : p.row(i)) out.push_back(v / norm);
  }
  std::optional<std::vector<ClassId>> labels;
  if (p.has_labels()) labels = p.labels();
  return PointSet(p.size(), p.dim(), std::move(out), std::move(labels));
}

std::optional<std::size_t> find_exact_row(std::span<const double> x, const PointSet& q) {
  if (x.size() != q.dim()) return std::nullopt;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (std::equal(x.begin(), x.end(), q.row(i).begin())) return i;
  }
  return std::nullopt;
}

}  // namespace lensdepth
