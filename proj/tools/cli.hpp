#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace u2::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInputError = 2, kDisagreement = 3 };

/// Runs one command line (without the program name). Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace u2::cli
