#pragma once

#include <string>

#include "json.hpp"

#include "clp/verify.hpp"

namespace clp {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const AnalysisReport& r);
/// Inverse of to_json; member forms are rebuilt from the generators.
AnalysisReport report_from_json(const nlohmann::json& j);

/// Pretty-printed JSON with a trailing newline; keys sorted, so output is byte-stable.
std::string serialize(const AnalysisReport& r);
AnalysisReport deserialize(const std::string& text);

void write_report(const AnalysisReport& r, const std::string& path);
AnalysisReport read_report(const std::string& path);

nlohmann::json complex_json(const Complex& z);
Complex complex_from_json(const nlohmann::json& j);

}  // namespace clp
