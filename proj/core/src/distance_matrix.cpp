#include "lensdepth/distance_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lensdepth/error.hpp"

namespace lensdepth {

DistanceMatrix::DistanceMatrix(std::size_t m, std::vector<double> lower)
    : m_(m), lower_(std::move(lower)) {
  if (lower_.size() != lower_triangle_size(m_)) {
    throw UsageError("distance matrix of size " + std::to_string(m_) + " needs " +
                     std::to_string(lower_triangle_size(m_)) + " entries, got " +
                     std::to_string(lower_.size()));
  }
  for (double v : lower_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw NumericError("distance matrix entries must be finite and non-negative");
    }
    max_entry_ = std::max(max_entry_, v);
  }
}

DistanceMatrix DistanceMatrix::from_full(std::size_t m, std::span<const double> full) {
  if (full.size() != m * m) throw UsageError("full distance matrix has wrong size");
  std::vector<double> lower;
  lower.reserve(lower_triangle_size(m));
  for (std::size_t i = 0; i < m; ++i) {
    if (full[i * m + i] != 0.0) {
      throw UsageError("distance matrix diagonal must be zero (row " + std::to_string(i) + ")");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (full[i * m + j] != full[j * m + i]) {
        throw UsageError("distance matrix is not symmetric at (" + std::to_string(i) +
                         ", " + std::to_string(j) + ")");
      }
      lower.push_back(full[i * m + j]);
    }
  }
  return DistanceMatrix(m, std::move(lower));
}

double DistanceMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= m_ || j >= m_) {
    throw UsageError("distance matrix index (" + std::to_string(i) + ", " +
                     std::to_string(j) + ") out of range for size " + std::to_string(m_));
  }
  return (*this)(i, j);
}

void DistanceMatrix::copy_row(std::size_t i, std::span<double> out) const {
  const double* base = lower_.data() + (i == 0 ? 0 : i * (i - 1) / 2);
  std::copy(base, base + i, out.begin());
  out[i] = 0.0;
  for (std::size_t j = i + 1; j < m_; ++j) out[j] = lower_[j * (j - 1) / 2 + i];
}

}  // namespace lensdepth
