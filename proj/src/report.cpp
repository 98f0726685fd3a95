#include "subshift/report.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "subshift/error.hpp"

namespace subshift {

using nlohmann::ordered_json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  return std::string(buf, ptr);
}

std::string format_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string out = "\"";
      for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      return out + "\"";
    }
  };
  return std::visit(Visitor{}, c);
}

namespace {

ordered_json cell_to_json(const Cell& c) {
  return std::visit([](const auto& v) { return ordered_json(v); }, c);
}

Cell cell_from_json(const ordered_json& j) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  throw Error(Errc::parse, "report cell has unsupported type " + std::string(j.type_name()));
}

}  // namespace

ordered_json to_json(const ReportEnvelope& r) {
  ordered_json j;
  j["schema"] = r.schema;
  j["version"] = r.version;
  j["experiment"] = r.experiment;
  ordered_json config = ordered_json::object();
  for (const auto& [k, v] : r.config) config[k] = v;
  j["config"] = std::move(config);
  j["columns"] = r.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows) {
    ordered_json jr = ordered_json::array();
    for (const auto& c : row) jr.push_back(cell_to_json(c));
    rows.push_back(std::move(jr));
  }
  j["rows"] = std::move(rows);
  ordered_json verdicts = ordered_json::array();
  for (const auto& v : r.verdicts)
    verdicts.push_back(
        {{"name", v.name}, {"value", v.value}, {"relation", v.relation}, {"threshold", v.threshold}, {"pass", v.pass}});
  j["verdicts"] = std::move(verdicts);
  j["notes"] = r.notes;
  if (!r.timings.empty()) {
    ordered_json t = ordered_json::array();
    for (const auto& s : r.timings) t.push_back({{"stage", s.stage}, {"seconds", s.seconds}});
    j["timings"] = std::move(t);
  }
  return j;
}

ReportEnvelope report_from_json(const ordered_json& j) {
  try {
    ReportEnvelope r;
    r.schema = j.at("schema").get<std::string>();
    if (r.schema != kReportSchema)
      throw Error(Errc::parse, "unsupported report schema '" + r.schema + "' (expected " + kReportSchema + ")");
    r.version = j.at("version").get<std::string>();
    r.experiment = j.at("experiment").get<std::string>();
    for (const auto& [k, v] : j.at("config").items()) r.config.emplace_back(k, v.get<std::string>());
    r.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& jr : j.at("rows")) {
      Row row;
      for (const auto& c : jr) row.push_back(cell_from_json(c));
      r.rows.push_back(std::move(row));
    }
    for (const auto& v : j.at("verdicts"))
      r.verdicts.push_back({v.at("name").get<std::string>(), v.at("value").get<double>(),
                            v.at("relation").get<std::string>(), v.at("threshold").get<double>(),
                            v.at("pass").get<bool>()});
    if (j.contains("notes")) r.notes = j.at("notes").get<std::vector<std::string>>();
    if (j.contains("timings"))
      for (const auto& t : j.at("timings"))
        r.timings.push_back({t.at("stage").get<std::string>(), t.at("seconds").get<double>()});
    return r;
  } catch (const ordered_json::exception& e) {
    throw Error(Errc::parse, std::string("malformed report: ") + e.what());
  }
}

std::string render_json(const ReportEnvelope& r) { return to_json(r).dump(2) + "\n"; }

std::string render_csv(const ReportEnvelope& r) {
  std::string out;
  for (std::size_t i = 0; i < r.columns.size(); ++i) out += (i ? "," : "") + r.columns[i];
  out += "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_cell(row[i]);
    out += "\n";
  }
  return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot write '" + path.string() + "': " + std::strerror(errno));
  out << text;
  out.flush();
  if (!out) throw Error(Errc::io, "write to '" + path.string() + "' failed: " + std::strerror(errno));
}

}  // namespace

void emit_json(const ReportEnvelope& r, const std::filesystem::path& path) { write_file(path, render_json(r)); }

void emit_csv(const ReportEnvelope& r, const std::filesystem::path& path) { write_file(path, render_csv(r)); }

ReportEnvelope read_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open report '" + path.string() + "': " + std::strerror(errno));
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw Error(Errc::parse, path.string() + ": " + e.what());
  }
  return report_from_json(j);
}

}  // namespace subshift
