#pragma once

#include <iosfwd>

#include "convect/config.hpp"

namespace convect {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kNotConverged = 2,
  kSolverError = 3,
  kIoError = 4,
};

/// Executes one configured run: mesh build and validation, time stepping to
/// steady state (or for fixed_steps), and post-processing. Writes into
/// cfg.out_dir: diagnostics.csv, fields.snap (plus cadence snapshots and
/// checkpoint.bin), nu_av.csv, uy_max.csv and summary.txt. Returns an
/// ExitCode; progress goes to log.
int run(const RunConfig& cfg, std::ostream& log);

}  // namespace convect
