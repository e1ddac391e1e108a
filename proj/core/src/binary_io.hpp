#pragma once

// Little-endian fixed-width encoding shared by the binary file formats.

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "lensdepth/error.hpp"

namespace lensdepth::detail {

template <typename T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    std::memcpy(&v, b, sizeof(T));
  }
  return v;
}

template <typename T>
void write_le(std::ostream& out, T v) {
  v = to_little(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_le(std::istream& in, const char* what) {
  T v;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) {
    throw IoError(std::string("truncated binary file while reading ") + what);
  }
  return to_little(v);
}

inline void expect_magic(std::istream& in, const char (&magic)[8]) {
  char got[8];
  if (!in.read(got, 8) || std::memcmp(got, magic, 8) != 0) {
    throw IoError("bad magic, expected " + std::string(magic, 8));
  }
}

}  // namespace lensdepth::detail
