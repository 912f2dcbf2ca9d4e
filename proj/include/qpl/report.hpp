#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qpl/harness.hpp"

namespace qpl {

enum class ReportFormat { Text, Json, Markdown };

std::optional<ReportFormat> parse_report_format(std::string_view s);  // text, json, md, markdown

/// Keys sorted; no timestamps, so identical reports serialize identically.
nlohmann::json report_to_json(const EvalReport& report);
/// Rebuilds the report from its `records`; buckets are recomputed.
EvalReport report_from_json(const nlohmann::json& j);

/// Markdown: a difficulty table (Easy, Medium, Hard, Extra Hard, Overall)
/// and a QPL length table (1..7, ≥8, Overall). An empty report renders the
/// table headers only.
std::string report_render(const EvalReport& report, ReportFormat format);

}  // namespace qpl
