#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "harmonic_groups/rational.hpp"

namespace hg::cli {

/// Marker written in the stderr column of deterministic rows.
inline constexpr const char* kExactMarker = "exact";

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  std::string render() const;
};

/// A named scalar result that `--check` can compare against an expectation.
struct Quantity {
  double value = 0;
  std::optional<double> standard_error;  // set for Monte Carlo quantities
  std::optional<Rational> exact;         // set for exact quantities

  static Quantity of_exact(const Rational& r);
  static Quantity of_estimate(double v, double se);
};

struct RunResult {
  CsvTable table;
  std::map<std::string, Quantity> summary;
  nlohmann::json details = nlohmann::json::object();
  bool stochastic = false;
};

std::string format_double(double v);
std::string sha256_hex(std::string_view bytes);

}  // namespace hg::cli
