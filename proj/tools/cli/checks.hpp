#pragma once

// The built-in acceptance criteria, shared by `check-all` and the acceptance
// test binary.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "report.hpp"

namespace hg::cli {

inline constexpr std::uint64_t kDefaultCheckSeed = 20240611;

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;
};

/// Stochastic runs made by earlier checks, replayed by the reproducibility check.
struct RecordedRun {
  std::string command;
  nlohmann::json config;
  std::string digest;
};

struct CheckContext {
  std::uint64_t seed = kDefaultCheckSeed;
  std::vector<RecordedRun> recorded;
};

struct Check {
  int id;
  std::string name;
  double limit_seconds;
  std::function<std::pair<bool, std::string>(CheckContext&)> body;
};

const std::vector<Check>& acceptance_checks();

/// Runs one check, timing it; exceptions count as failures. A check that
/// overruns its time limit fails.
CheckResult run_check(const Check& check, CheckContext& ctx);

/// All checks in order as a table (id, criterion, passed, detail).
RunResult run_check_all(std::uint64_t seed);

/// "AC04 PASS hitting measure (1.23 s, limit 60 s): ..."
std::string format_check_line(const CheckResult& r);

}  // namespace hg::cli
