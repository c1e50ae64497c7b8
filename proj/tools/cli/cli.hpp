#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace optosqueeze::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kUnstable = 3,
    kNumerical = 4,
};

/// Runs one command. args excludes the program name. Human-readable
/// summaries go to out; every failure prints a single "error: ..." line to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace optosqueeze::cli
