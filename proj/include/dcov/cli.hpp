#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dcov::cli {

enum ExitCode : int { ok = 0, failed = 1, usage = 2, domain = 3 };

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`; `in` is read when no --input file is given.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace dcov::cli
