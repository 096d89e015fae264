#pragma once

#include "qmap_cli/config.hpp"

#include <iosfwd>

namespace qmap::cli {

enum ExitCode : int { exit_pass = 0, exit_assertion = 1, exit_config = 2, exit_convergence = 3 };

/// Runs config.command, writing artifacts under config.out_dir. Messages go
/// to `log`. Throws ConfigError for a missing calibration prerequisite and
/// ConvergenceError when a solve hits max_iter.
int dispatch(const RunConfig& config, std::ostream& log);

/// Worker count from QMAP_THREADS (unset or invalid: 1).
unsigned thread_cap();

}  // namespace qmap::cli
