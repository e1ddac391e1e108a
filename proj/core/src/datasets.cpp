#include "lensdepth/datasets.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lensdepth/error.hpp"
#include "lensdepth/random.hpp"

namespace lensdepth {

PointSet two_moons(std::size_t n, double noise, std::uint64_t seed) {
  if (n < 2) throw UsageError("two_moons needs n >= 2");
  if (!(noise >= 0.0) || !std::isfinite(noise)) throw UsageError("noise must be finite and >= 0");
  const std::size_t n_upper = (n + 1) / 2;
  const std::size_t n_lower = n / 2;
  auto angle = [](std::size_t i, std::size_t count) {
    return count < 2 ? 0.0 : std::numbers::pi * static_cast<double>(i) / static_cast<double>(count - 1);
  };
  Rng rng(seed);
  std::vector<double> data;
  data.reserve(2 * n);
  std::vector<ClassId> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n_upper; ++i) {
    const double t = angle(i, n_upper);
    data.push_back(std::cos(t));
    data.push_back(std::sin(t));
    labels.push_back(0);
  }
  for (std::size_t i = 0; i < n_lower; ++i) {
    const double t = angle(i, n_lower);
    data.push_back(1.0 - std::cos(t));
    data.push_back(0.5 - std::sin(t));
    labels.push_back(1);
  }
  if (noise > 0.0) {
    for (double& v : data) v += noise * rng.normal();
  }
  return PointSet(n, 2, std::move(data), std::move(labels));
}

std::array<double, 2> spiral_point(double theta, double turns) {
  const double r = theta / (2.0 * std::numbers::pi * turns);
  return {r * std::cos(theta), r * std::sin(theta)};
}

PointSet spiral(std::size_t n, double turns, double noise, std::uint64_t seed) {
  if (n < 2) throw UsageError("spiral needs n >= 2");
  if (!(turns > 0.0) || !std::isfinite(turns)) throw UsageError("spiral turns must be > 0");
  if (!(noise >= 0.0) || !std::isfinite(noise)) throw UsageError("noise must be finite and >= 0");
  Rng rng(seed);
  std::vector<double> data;
  data.reserve(2 * n);
  const double theta_max = 2.0 * std::numbers::pi * turns;
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = spiral_point(rng.uniform(0.0, theta_max), turns);
    data.push_back(p[0]);
    data.push_back(p[1]);
  }
  if (noise > 0.0) {
    for (double& v : data) v += noise * rng.normal();
  }
  return PointSet(n, 2, std::move(data), std::vector<ClassId>(n, 0));
}

std::vector<std::array<double, 2>> default_gaussian_centers(double sigma) {
  const double side = 10.0 * sigma;
  return {{0.0, 0.0}, {side, 0.0}, {side / 2.0, side * std::sqrt(3.0) / 2.0}};
}

PointSet gaussians3(std::size_t n_per, double sigma, std::uint64_t seed,
                    std::optional<std::vector<std::array<double, 2>>> centers) {
  if (n_per < 1) throw UsageError("gaussians3 needs at least one point per cluster");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw UsageError("sigma must be finite and >= 0");
  const auto c = centers ? *centers : default_gaussian_centers(sigma);
  if (c.size() != 3) throw UsageError("gaussians3 needs exactly 3 centers");
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (c[i] == c[j]) throw UsageError("gaussians3 centers must be pairwise distinct");
    }
  }
  Rng rng(seed);
  std::vector<double> data;
  data.reserve(6 * n_per);
  std::vector<ClassId> labels;
  labels.reserve(3 * n_per);
  for (ClassId k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < n_per; ++i) {
      data.push_back(c[k][0] + sigma * rng.normal());
      data.push_back(c[k][1] + sigma * rng.normal());
      labels.push_back(k);
    }
  }
  return PointSet(3 * n_per, 2, std::move(data), std::move(labels));
}

PointSet uniform_box(std::size_t n, std::span<const double> lo, std::span<const double> hi,
                     std::uint64_t seed) {
  if (lo.size() != hi.size() || lo.empty()) throw UsageError("uniform_box: bad bounds");
  Rng rng(seed);
  std::vector<double> data;
  data.reserve(n * lo.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < lo.size(); ++k) data.push_back(rng.uniform(lo[k], hi[k]));
  }
  return PointSet(n, lo.size(), std::move(data));
}

}  // namespace lensdepth
