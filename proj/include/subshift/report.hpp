#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "subshift/ergodic.hpp"

namespace subshift {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "subshift-report/1";

using Cell = std::variant<std::int64_t, double, std::string, bool>;
using Row = std::vector<Cell>;

struct StageTiming {
  std::string stage;
  double seconds = 0.0;

  friend bool operator==(const StageTiming&, const StageTiming&) = default;
};

struct ReportEnvelope {
  std::string schema = kReportSchema;
  std::string version = kVersion;
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> columns;
  std::vector<Row> rows;
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;
  // Empty unless timings were requested; wall-clock values break byte identity.
  std::vector<StageTiming> timings;

  friend bool operator==(const ReportEnvelope&, const ReportEnvelope&) = default;
};

// 9 significant digits, '.' separator, shortest form; locale independent.
std::string format_number(double v);
std::string format_cell(const Cell& c);

nlohmann::ordered_json to_json(const ReportEnvelope& r);
ReportEnvelope report_from_json(const nlohmann::ordered_json& j);

std::string render_json(const ReportEnvelope& r);
std::string render_csv(const ReportEnvelope& r);

void emit_json(const ReportEnvelope& r, const std::filesystem::path& path);
void emit_csv(const ReportEnvelope& r, const std::filesystem::path& path);
ReportEnvelope read_report(const std::filesystem::path& path);

}  // namespace subshift
