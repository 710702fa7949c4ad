#pragma once

#include <iosfwd>

namespace diff4::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kUsage = 2 };

// Runs the command line; all normal output goes to `out`, diagnostics to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace diff4::cli
