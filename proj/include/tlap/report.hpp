#pragma once

#include <string>

#include "json.hpp"

namespace tlap {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

/// Serialize a report tree with floating-point numbers at 17 significant
/// digits (value-exact and byte-stable across runs), keys in sorted order,
/// two-space indentation.
std::string dump_report(const Json& j);

/// dump_report to a file (trailing newline included).
void write_report(const std::string& path, const Json& j);

}  // namespace tlap
