#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace lensdepth {

/// Symmetric m x m matrix with zero diagonal, stored as the strict lower
/// triangle so that symmetry holds structurally.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  /// Takes the m(m-1)/2 strict-lower-triangle entries, row by row
  /// ((1,0), (2,0), (2,1), (3,0), ...). Entries must be finite and >= 0.
  DistanceMatrix(std::size_t m, std::vector<double> lower);

  /// Validates a full row-major matrix: symmetric, zero diagonal, finite,
  /// non-negative.
  static DistanceMatrix from_full(std::size_t m, std::span<const double> full);

  std::size_t size() const { return m_; }

  double operator()(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    if (i < j) std::swap(i, j);
    return lower_[i * (i - 1) / 2 + j];
  }
  double at(std::size_t i, std::size_t j) const;

  /// Copies row i into `out` (size m).
  void copy_row(std::size_t i, std::span<double> out) const;

  std::span<const double> lower_triangle() const { return lower_; }
  double max_entry() const { return max_entry_; }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t m_ = 0;
  std::vector<double> lower_;
  double max_entry_ = 0.0;
};

constexpr std::size_t lower_triangle_size(std::size_t m) {
  return m < 2 ? 0 : m * (m - 1) / 2;
}

}  // namespace lensdepth
