#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace lensdepth {

using ClassId = std::uint32_t;

/// Dense row-major n x d matrix of feature vectors with optional class labels.
///
/// An empty set (n == 0) is representable so that empty feature files can flow
/// through the pipeline; every algorithm that needs points checks for it.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t rows, std::size_t dim, std::vector<double> data,
           std::optional<std::vector<ClassId>> labels = std::nullopt);

  std::size_t size() const { return rows_; }
  std::size_t dim() const { return dim_; }
  bool empty() const { return rows_ == 0; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<const double> data() const { return data_; }

  bool has_labels() const { return labels_.has_value(); }
  const std::vector<ClassId>& labels() const;

  /// Sorted distinct class ids.
  std::vector<ClassId> classes() const;

  PointSet select(std::span<const std::size_t> indices) const;
  PointSet without_labels() const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
  std::optional<std::vector<ClassId>> labels_;
};

double euclidean(std::span<const double> a, std::span<const double> b);
double squared_euclidean(std::span<const double> a, std::span<const double> b);

struct NearestParticle {
  std::size_t index;
  double distance;
};

/// Closest row of `q` to `x`; ties go to the lowest index.
NearestParticle nearest_particle(std::span<const double> x, const PointSet& q);

/// Scales every row to unit Euclidean norm; throws on an all-zero row.
PointSet l2_normalize(const PointSet& p);
std::vector<double> l2_normalize(std::span<const double> x);

/// Row index of `x` in `q` when it matches a row bit-for-bit.
std::optional<std::size_t> find_exact_row(std::span<const double> x,
                                          const PointSet& q);

}  // namespace lensdepth
