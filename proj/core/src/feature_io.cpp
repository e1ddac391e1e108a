#include "lensdepth/feature_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string_view>

#include "binary_io.hpp"
#include "lensdepth/error.hpp"

namespace lensdepth {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string where(std::size_t row, std::size_t col) {
  return "row " + std::to_string(row) + ", column " + std::to_string(col);
}

}  // namespace

PointSet read_features_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("feature CSV is empty (missing header)");
  if (line.size() >= 3 && std::memcmp(line.data(), "\xEF\xBB\xBF", 3) == 0) line.erase(0, 3);
  const auto header = split(line);
  bool has_label = !header.empty() && header.back() == "label";
  const std::size_t dim = header.size() - (has_label ? 1 : 0);
  if (dim == 0) throw IoError("feature CSV header has no feature columns");
  for (std::size_t k = 0; k < dim; ++k) {
    if (header[k] != "f" + std::to_string(k)) {
      throw IoError("malformed feature CSV header: column " + std::to_string(k) +
                    " is '" + std::string(header[k]) + "', expected 'f" +
                    std::to_string(k) + "'");
    }
  }

  std::vector<double> data;
  std::vector<ClassId> labels;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (fields.size() != header.size()) {
      throw IoError("ragged feature CSV: row " + std::to_string(row) + " has " +
                    std::to_string(fields.size()) + " fields, header has " +
                    std::to_string(header.size()));
    }
    for (std::size_t k = 0; k < dim; ++k) {
      double v = 0.0;
      const auto f = fields[k];
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw IoError("unparseable number '" + std::string(f) + "' at " + where(row, k));
      }
      if (!std::isfinite(v)) throw NumericError("non-finite value at " + where(row, k));
      data.push_back(v);
    }
    if (has_label) {
      const auto f = fields[dim];
      std::uint64_t v = 0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size() ||
          v > std::numeric_limits<ClassId>::max()) {
        throw IoError("invalid label '" + std::string(f) + "' at row " + std::to_string(row));
      }
      labels.push_back(static_cast<ClassId>(v));
    }
    ++row;
  }
  std::optional<std::vector<ClassId>> out_labels;
  if (has_label) out_labels = std::move(labels);
  return PointSet(row, dim, std::move(data), std::move(out_labels));
}

PointSet read_features_binary(std::istream& in) {
  detail::expect_magic(in, kFeatureMagic);
  const auto n = detail::read_le<std::uint64_t>(in, "row count");
  const auto d = detail::read_le<std::uint64_t>(in, "dimension");
  const auto has_labels = detail::read_le<std::uint8_t>(in, "label flag");
  if (d == 0) throw IoError("binary feature file has dimension 0");
  if (has_labels > 1) throw IoError("binary feature file has invalid label flag");
  std::vector<double> data;
  data.reserve(n * d);
  for (std::uint64_t k = 0; k < n * d; ++k) {
    const double v = detail::read_le<double>(in, "feature values");
    if (!std::isfinite(v)) throw NumericError("non-finite value at " + where(k / d, k % d));
    data.push_back(v);
  }
  std::optional<std::vector<ClassId>> labels;
  if (has_labels) {
    auto& l = labels.emplace();
    l.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) l.push_back(detail::read_le<std::uint32_t>(in, "labels"));
  }
  return PointSet(n, d, std::move(data), std::move(labels));
}

PointSet load_features(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open feature file " + path.string());
  std::array<char, 8> head{};
  in.read(head.data(), head.size());
  const bool binary = in.gcount() == 8 && std::memcmp(head.data(), kFeatureMagic, 8) == 0;
  in.clear();
  in.seekg(0);
  return binary ? read_features_binary(in) : read_features_csv(in);
}

std::string format_double(double v) {
  std::array<char, 32> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void write_features_csv(std::ostream& out, const PointSet& p) {
  for (std::size_t k = 0; k < p.dim(); ++k) out << (k ? ",f" : "f") << k;
  if (p.has_labels()) out << ",label";
  out << '\n';
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto r = p.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (k) out << ',';
      out << format_double(r[k]);
    }
    if (p.has_labels()) out << ',' << p.labels()[i];
    out << '\n';
  }
}

void write_features_binary(std::ostream& out, const PointSet& p) {
  out.write(kFeatureMagic, 8);
  detail::write_le<std::uint64_t>(out, p.size());
  detail::write_le<std::uint64_t>(out, p.dim());
  detail::write_le<std::uint8_t>(out, p.has_labels() ? 1 : 0);
  for (double v : p.data()) detail::write_le<double>(out, v);
  if (p.has_labels()) {
    for (ClassId l : p.labels()) detail::write_le<std::uint32_t>(out, l);
  }
}

void save_features(const std::filesystem::path& path, const PointSet& p) {
  const auto ext = path.extension();
  const bool binary = ext == ".bin" || ext == ".ldfeat";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write feature file " + path.string());
  if (binary) {
    write_features_binary(out, p);
  } else {
    write_features_csv(out, p);
  }
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace lensdepth
