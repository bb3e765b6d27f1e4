#pragma once

#include <iosfwd>

namespace chebias::cli {

enum ExitCode { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

/// Subcommands: constants, scan, bounds, verify, sieve-export, report.
/// Reports go to `out` (or --output), progress and errors to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chebias::cli
