#pragma once

#include "ctorque/config.hpp"
#include "ctorque/table.hpp"

namespace ctorque::cli {

enum ExitStatus : int { kExitSuccess = 0, kExitComputationFailure = 1, kExitConfigError = 2 };

struct RunOutcome {
  Table table;
  bool success = true;  // every row succeeded (and validate met its threshold)

  int exit_status() const noexcept { return success ? kExitSuccess : kExitComputationFailure; }
};

/// Executes one configured command. Per-row failures are reported in the
/// `status` column rather than thrown.
RunOutcome run(const RunConfig& cfg);

}  // namespace ctorque::cli
