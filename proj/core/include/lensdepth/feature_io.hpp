#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "lensdepth/point_set.hpp"

namespace lensdepth {

inline constexpr char kFeatureMagic[8] = {'L', 'D', 'F', 'E', 'A', 'T', '0', '1'};

/// Loads a feature file, detecting the LDFEAT01 binary format by its magic
/// and otherwise parsing CSV with header `f0,...,f{d-1}[,label]`.
PointSet load_features(const std::filesystem::path& path);

PointSet read_features_csv(std::istream& in);
PointSet read_features_binary(std::istream& in);

void write_features_csv(std::ostream& out, const PointSet& p);
void write_features_binary(std::ostream& out, const PointSet& p);

/// Writes CSV unless the extension is `.bin` / `.ldfeat`.
void save_features(const std::filesystem::path& path, const PointSet& p);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

}  // namespace lensdepth
