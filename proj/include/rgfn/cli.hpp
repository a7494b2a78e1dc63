#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rgfn::cli {

enum ExitCode : int {
  kPass = 0,
  kConfigError = 1,
  kHypothesisFailure = 2,
  kConclusionFailure = 3,
};

/// Parses `args` (without the program name), runs the subcommand and
/// returns its exit code. Human-readable output goes to `out`, diagnostics
/// to `err`; artifacts are written to the paths given by the flags.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rgfn::cli
