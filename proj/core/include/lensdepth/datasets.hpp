#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lensdepth/point_set.hpp"

namespace lensdepth {

inline constexpr std::size_t kMoonsDefaultN = 1000;
inline constexpr double kMoonsDefaultNoise = 0.07;
inline constexpr std::size_t kSpiralDefaultN = 1000;
inline constexpr double kSpiralDefaultTurns = 2.0;
inline constexpr double kSpiralDefaultNoise = 0.02;

/// Two interleaving half circles: class 0 (ceil(n/2) points) on the upper
/// unit arc around the origin, class 1 (floor(n/2)) on the lower arc around
/// (1, 0.5). Points are evenly spaced in angle, then jittered by isotropic
/// Gaussian noise.
PointSet two_moons(std::size_t n = kMoonsDefaultN, double noise = kMoonsDefaultNoise,
                   std::uint64_t seed = 1);

/// Noise-free Archimedean spiral point r = theta / (2 pi turns), so the
/// outer end sits on the unit circle.
std::array<double, 2> spiral_point(double theta, double turns);

/// Single-class spiral: theta uniform in [0, 2 pi turns], then Gaussian noise.
PointSet spiral(std::size_t n = kSpiralDefaultN, double turns = kSpiralDefaultTurns,
                double noise = kSpiralDefaultNoise, std::uint64_t seed = 1);

/// Vertices of an equilateral triangle with side 10 sigma.
std::vector<std::array<double, 2>> default_gaussian_centers(double sigma);

/// Three isotropic Gaussian blobs, n_per points each, labels 0..2.
PointSet gaussians3(std::size_t n_per, double sigma, std::uint64_t seed,
                    std::optional<std::vector<std::array<double, 2>>> centers = std::nullopt);

/// Uniform points in an axis-aligned box.
PointSet uniform_box(std::size_t n, std::span<const double> lo,
                     std::span<const double> hi, std::uint64_t seed);

}  // namespace lensdepth
