#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace neutro::cli {

/// Exit statuses of run().
enum ExitCode : int { kOk = 0, kEngineError = 1, kUsageError = 2 };

/// Runs one command.  `args` excludes the program name.  Results go to `out`,
/// human-readable diagnostics and errors to `err`; with --json everything is
/// a single JSON document on `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace neutro::cli
