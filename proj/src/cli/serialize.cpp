#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "ghshift/cli.hpp"

namespace ghshift::cli {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

struct CsvCell {
  std::string operator()(std::monostate) const { return {}; }
  std::string operator()(double v) const { return format_number(v); }
  std::string operator()(const std::string& s) const { return csv_field(s); }
  std::string operator()(bool b) const { return b ? "true" : "false"; }
};

struct JsonCell {
  std::string operator()(std::monostate) const { return "null"; }
  std::string operator()(double v) const { return std::isfinite(v) ? format_number(v) : "null"; }
  std::string operator()(const std::string& s) const { return json_string(s); }
  std::string operator()(bool b) const { return b ? "true" : "false"; }
};

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const OutputRecord& rec) {
  os << "# schema_version: " << kSchemaVersion << '\n';
  os << "# command: " << rec.command << '\n';
  for (const auto& [k, v] : rec.parameters) os << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < rec.columns.size(); ++i)
    os << (i ? "," : "") << rec.columns[i];
  os << '\n';
  for (const auto& row : rec.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << std::visit(CsvCell{}, row[i]);
    os << '\n';
  }
}

void write_json(std::ostream& os, const OutputRecord& rec) {
  os << "{\n  \"schema_version\": " << json_string(kSchemaVersion) << ",\n";
  os << "  \"command\": " << json_string(rec.command) << ",\n";
  os << "  \"parameters\": {";
  for (std::size_t i = 0; i < rec.parameters.size(); ++i)
    os << (i ? ", " : "") << json_string(rec.parameters[i].first) << ": "
       << json_string(rec.parameters[i].second);
  os << "},\n  \"columns\": [";
  for (std::size_t i = 0; i < rec.columns.size(); ++i)
    os << (i ? ", " : "") << json_string(rec.columns[i]);
  os << "],\n  \"rows\": [";
  for (std::size_t r = 0; r < rec.rows.size(); ++r) {
    os << (r ? ",\n    {" : "\n    {");
    const auto& row = rec.rows[r];
    for (std::size_t i = 0; i < row.size() && i < rec.columns.size(); ++i)
      os << (i ? ", " : "") << json_string(rec.columns[i]) << ": "
         << std::visit(JsonCell{}, row[i]);
    os << '}';
  }
  os << (rec.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

}  // namespace ghshift::cli
