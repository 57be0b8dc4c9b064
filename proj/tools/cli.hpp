#pragma once

// Command-line front end. The whole tool is this one function so tests can
// drive it in-process with captured streams.

#include <iosfwd>

namespace ribbonpatch::cli {

enum ExitCode : int {
  Success = 0,
  PipelineFailure = 1,
  UsageError = 2,
};

/// Parses argv (argv[0] is the program name), runs the selected subcommand
/// and returns the process exit code. Progress goes to `out`; errors go to
/// `err` as a single JSON object.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace ribbonpatch::cli
