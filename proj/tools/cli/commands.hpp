#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "report.hpp"

namespace hg::cli {

inline constexpr const char* kToolName = "harmonic-groups";
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitSchema = 2,
  kExitResource = 3,
  kExitCensoring = 4,
  kExitCheckFailed = 5,
};

/// One operation per run. `seed` overrides the config's "seed" field.
struct RunConfig {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out_dir;
  bool check = false;
};

struct RunOutcome {
  int exit_code = kExitOk;
  std::string csv;
  std::string digest;  // sha256 of the csv bytes
  nlohmann::json manifest;
  std::string message;
};

const std::vector<std::string>& command_names();
bool is_stochastic_command(const std::string& command, const nlohmann::json& config);

/// Runs one operation and returns its table and named results. Throws the
/// library's errors and ConfigError. Monte Carlo sample counts are multiplied
/// by `sample_multiplier` (used by the --check retry).
RunResult execute(const std::string& command, const nlohmann::json& config, std::optional<std::uint64_t> seed,
                  std::uint64_t sample_multiplier = 1);

struct ExpectationReport {
  bool passed = true;
  bool any_statistical_miss = false;
  std::vector<std::string> lines;
};

/// Compares results with the config's "expect" object. Exact results are
/// compared exactly, Monte Carlo ones within 3 standard errors unless an
/// explicit "tolerance" is given.
ExpectationReport compare_expectations(const nlohmann::json& expect, const RunResult& result);

/// Full run: execute, optional check with one 4x retry, CSV and manifest
/// emission. Never throws; failures map to exit codes.
RunOutcome run(const RunConfig& cfg);

}  // namespace hg::cli
