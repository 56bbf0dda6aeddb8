#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qnet/protocols/scenario.hpp"
#include "qnet_app/config.hpp"

namespace qnet::app {

enum ExitCode : int {
  exit_ok = 0,
  exit_config_error = 2,
  exit_scenario_error = 3,
  exit_acceptance_failure = 4,
  exit_truncation = 5,
};

inline constexpr const char* output_dir_env = "QNET_OUTPUT_DIR";

/// QNET_OUTPUT_DIR if set, otherwise ./qnet_output.
std::filesystem::path default_output_root();

struct RunOutcome {
  ScenarioResult result;
  /// Every parameter actually used, including scenario defaults.
  Config resolved;
  std::filesystem::path directory;
};

/// Validates the configuration, runs the named scenario and returns the
/// result, the resolved configuration and the output directory. Nothing is written.
RunOutcome execute(const Config& cfg);

/// Output directory for a configuration: [output] dir, else `fallback_root`,
/// joined with the scenario name.
std::filesystem::path output_directory(const Config& cfg, const std::filesystem::path& fallback_root);

/// One CSV per table, metrics.json and resolved_config.cfg. Refuses to write
/// into a non-empty directory unless [output] overwrite is true.
void write_outputs(const RunOutcome& outcome);

std::string metrics_json(const ScenarioResult& result);

/// Maps an exception to an exit code and a one-line JSON error record.
ExitCode classify_error(const std::exception& e, std::string& json_record);

}  // namespace qnet::app
