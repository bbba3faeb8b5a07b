#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qi/experiments.hpp"

namespace qi {

enum class ReportFormat { Csv, Json };

ReportFormat parse_format(const std::string& name);

/// Rounds to 15 significant digits.
double round15(double value);

/// Header j,p,error,comparator,ratio,slope,tag; one line per row.
std::string emit_csv(const ExperimentReport& report);

/// Rows plus fits, brackets and metadata (config hash, seeds, tolerances).
nlohmann::json emit_json(const ExperimentReport& report);

/// Writes <dir>/<config name>.<csv|json> and returns the path.
/// Throws std::runtime_error naming the path on I/O failure.
std::filesystem::path write_report(const ExperimentReport& report, const std::filesystem::path& dir,
                                   ReportFormat format);

}  // namespace qi
