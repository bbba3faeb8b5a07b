#include "qi/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qi {

using nlohmann::json;

namespace {

std::string csv_number(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return round15(v);
}

}  // namespace

ReportFormat parse_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw std::invalid_argument("unknown report format \"" + name + "\" (expected csv or json)");
}

double round15(double value) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return std::strtod(buf, nullptr);
}

std::string emit_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "j,p,error,comparator,ratio,slope,tag\n";
  for (const auto& row : report.rows) {
    out << row.j << ',' << csv_number(row.p) << ',' << csv_number(row.error) << ','
        << csv_number(row.comparator) << ',' << csv_number(row.ratio) << ','
        << csv_number(row.slope) << ',' << csv_text(row.tag) << '\n';
  }
  return out.str();
}

json emit_json(const ExperimentReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back({
        {"j", row.j},
        {"p", json_number(row.p)},
        {"error", json_number(row.error)},
        {"error_tag", row.error_tag},
        {"comparator_name", row.comparator_name},
        {"comparator_value", json_number(row.comparator)},
        {"comparator_tag", row.comparator_tag},
        {"ratio", json_number(row.ratio)},
        {"slope", json_number(row.slope)},
        {"tag", row.tag},
    });
  }
  json fits = json::array();
  for (const auto& fit : report.fits) {
    fits.push_back({{"series", fit.series},
                    {"p", json_number(fit.p)},
                    {"slope", json_number(fit.slope)},
                    {"residual", json_number(fit.residual)},
                    {"points", fit.points},
                    {"flagged", fit.flagged}});
  }
  json brackets = json::array();
  for (const auto& b : report.brackets) {
    brackets.push_back({{"series", b.series},
                        {"p", json_number(b.p)},
                        {"min", json_number(b.min)},
                        {"max", json_number(b.max)},
                        {"max_over_min", json_number(b.spread)},
                        {"points", b.points}});
  }
  json metadata = report.metadata.is_null() ? json::object() : report.metadata;
  metadata["study"] = report.study;
  metadata["name"] = report.config.name;
  metadata["config_hash"] = config_hash(report.config);
  metadata["seed"] = report.config.seed;
  metadata["oversample"] = report.config.oversample;
  metadata["tolerances"] = {{"fit_residual_limit", kFitResidualLimit}};
  return {{"metadata", metadata},
          {"config", config_to_json(report.config)},
          {"rows", rows},
          {"fits", fits},
          {"brackets", brackets}};
}

std::filesystem::path write_report(const ExperimentReport& report, const std::filesystem::path& dir,
                                   ReportFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create directory " + dir.string() + ": " + ec.message());
  const auto path = dir / (report.config.name + (format == ReportFormat::Csv ? ".csv" : ".json"));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  if (format == ReportFormat::Csv) {
    out << emit_csv(report);
  } else {
    out << emit_json(report).dump(2) << '\n';
  }
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
  return path;
}

}  // namespace qi
