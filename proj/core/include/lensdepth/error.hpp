#pragma once

#include <stdexcept>
#include <string>

namespace lensdepth {

// Bad arguments or violated preconditions. CLI exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable/malformed files. CLI exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite input, non-PD covariance. CLI exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lensdepth
