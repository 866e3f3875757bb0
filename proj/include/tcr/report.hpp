#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tcr/config.hpp"
#include "tcr/harness.hpp"

namespace tcr {

/// 12 significant digits; "nan" for NaN.
std::string format_number(double value);

/// Column names of trace.csv, in order.
const std::vector<std::string>& trace_columns();

std::string trace_csv(const SimulationResult& result);
Json summary_json(const SimulationResult& result, const RunConfig& config);

std::string aggregate_csv(const AggregateStats& stats);
Json aggregate_json(const AggregateStats& stats);

Json validation_json(const ValidationReport& report, double tolerance);

/// Writes text (JSON is dumped with 2-space indent and a trailing newline).
/// Throws IoError on failure.
void write_text_file(const std::filesystem::path& path, std::string_view text);
void write_json_file(const std::filesystem::path& path, const Json& doc);

}  // namespace tcr
