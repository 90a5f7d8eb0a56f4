#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "serialize.hpp"

namespace ivm {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitFailed = 1,        // a declared expectation or a verification failed
  kExitInconclusive = 2,  // nothing failed, but some check was inconclusive
  kExitInvalid = 3,       // the spec could not be parsed or validated
};

struct RunOptions {
  int jobs = 1;
  std::uint64_t seed = 1;
  /// Runs only this task, ignoring the spec's task list.
  std::optional<std::string> task;
};

struct ExperimentResult {
  Json output;
  int exit_code = kExitOk;
};

/// Task names accepted in "tasks" and as CLI subcommands.
const std::vector<std::string>& task_names();

/// Runs every task of a schema-1 experiment spec. Output ordering is fixed,
/// so identical specs give byte-identical JSON. Invalid specs yield
/// {"schema": 1, "error": ...} with exit code kExitInvalid.
ExperimentResult run_experiment(const Json& spec, const RunOptions& opt);
/// Same, from JSON text; parse errors report line and column.
ExperimentResult run_experiment_text(const std::string& text, const RunOptions& opt);

}  // namespace ivm
