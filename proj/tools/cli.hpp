#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hypercf::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kExhausted = 2,
};

/// Runs the command line `args` (args[0] is the program name). Results go to
/// `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypercf::cli
