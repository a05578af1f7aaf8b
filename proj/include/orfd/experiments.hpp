#pragma once

#include <functional>
#include <string>

#include <json.hpp>

#include "orfd/config.hpp"

namespace orfd {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

struct CommandResult {
  /// Also written to <output>/<command>-summary.json.
  nlohmann::json summary;
  int exit_code = kExitOk;
};

/// Each command validates the whole config before computing anything
/// (ValidationError), runs its sweep items on up to config.workers threads and
/// assembles the summary in item order after all workers have joined.
CommandResult cmd_derive_params(const ExperimentConfig& config);
CommandResult cmd_spectrum(const ExperimentConfig& config);
CommandResult cmd_simulate(const ExperimentConfig& config);
CommandResult cmd_observability(const ExperimentConfig& config);

CommandResult run_command(const std::string& name, const ExperimentConfig& config);

/// Runs task(i) for i in [0, count) on at most `workers` threads.  Exceptions
/// are captured per item by the caller's task.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& task);

}  // namespace orfd
