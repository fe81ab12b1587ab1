#pragma once

#include <iosfwd>

namespace cogsim {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    exit_ok = 0,
    exit_invalid = 1,  ///< bad flags, config, trace or dataset
    exit_runtime = 2,  ///< anything else (I/O, undefined metrics, ...)
};

/// Entry point of the `cogsim` tool; writes results to `out` and
/// diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cogsim
