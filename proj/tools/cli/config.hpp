#pragma once

// JSON config -> library objects. Every parse error is a ConfigError carrying
// the JSON pointer of the offending entry.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "harmonic_groups/affine.hpp"
#include "harmonic_groups/group.hpp"
#include "harmonic_groups/measure.hpp"
#include "harmonic_groups/straightening.hpp"
#include "harmonic_groups/subgroup.hpp"

namespace hg::cli {

using nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& pointer, const std::string& message);
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

Group parse_group(const json& j, const std::string& at);
Element parse_element(const Group& g, const json& j, const std::string& at);
std::vector<Element> parse_elements(const Group& g, const json& j, const std::string& at);
Rational parse_rational_value(const json& j, const std::string& at);
RationalVector parse_rational_vector(const json& j, const std::string& at);
RationalMatrix parse_rational_matrix(const json& j, std::size_t cols, const std::string& at);

/// "srw" or a list of [coords, numerator, denominator].
FiniteMeasure parse_measure(const Group& g, const json& j, const std::string& at);

/// {"quotient": "whole" | "core" | "mod2_sum" | "mod", "axis": i, "m": k}; absent means the nilpotent core.
MarkedSubgroup parse_subgroup(const Group& g, const json* j, const std::string& at);

/// {"c": [...], "phi": [[...], ...]}; a flat "phi" row means a scalar function.
AffineHarmonic parse_function(const Group& g, const json& j, const std::string& at);

/// "default" | "king" | list of elements (names generated).
GeneratingSet parse_generators(const Group& g, const json* j, const std::string& at);

std::vector<QiPrimitive> parse_pipeline(const Group& source, const json& j, const std::string& at);

std::string format_coords(const Element& e);

/// Typed field access with pointer-bearing errors.
const json& require(const json& obj, const std::string& key, const std::string& at);
const json* optional_field(const json& obj, const std::string& key);
std::int64_t get_int(const json& obj, const std::string& key, std::int64_t fallback, const std::string& at);
bool get_bool(const json& obj, const std::string& key, bool fallback, const std::string& at);

}  // namespace hg::cli
