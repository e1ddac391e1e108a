#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lensdepth::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kNumeric = 3 };

/// Runs the command line `args` (without the program name). Data goes to
/// `out`, logs and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lensdepth::cli
