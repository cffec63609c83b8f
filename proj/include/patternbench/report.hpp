#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "patternbench/harness.hpp"

namespace patternbench {

enum class ReportFormat { Csv, Json, Svg };
ReportFormat parse_report_format(std::string_view name);

Json report_to_json(const EvaluationReport& r);
EvaluationReport report_from_json(const Json& j);

/// algorithm,ptype,kind,size,mean_performance,count
std::string report_csv(const EvaluationReport& r);
std::vector<EvaluationRow> parse_report_csv(const std::string& text);

/// Grouped bar chart: one group per pattern type, one bar per algorithm
/// (mean performance over sizes and kinds weighted by count).
std::string report_svg(const EvaluationReport& r);

/// Writes <base>.csv / .json / .svg for the requested formats and returns
/// the written paths. Throws PreconditionError for an empty report.
std::vector<std::filesystem::path> emit_report(const EvaluationReport& r,
                                               const std::vector<ReportFormat>& formats,
                                               const std::filesystem::path& base);

EvaluationReport read_report(const std::filesystem::path& json_path);

}  // namespace patternbench
