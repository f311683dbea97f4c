#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qpnls::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kUsage = 2,
    kOverflow = 3,
    kIo = 4,
};

/// Parses `args` (without the program name) and runs one subcommand.
/// Table output goes to `out` unless --output names a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qpnls::cli
