#pragma once

// Command-line front end. run_cli is the whole program minus process
// plumbing, so tests can drive it in-process.

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ghshift::cli {

inline constexpr const char* kSchemaVersion = "1.0";

enum ExitCode : int { kOk = 0, kUsage = 2, kNumeric = 3 };

/// Empty cell, number, text or flag.
using Cell = std::variant<std::monostate, double, std::string, bool>;

struct OutputRecord {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// "%.17g"; non-finite values become nan, inf and -inf.
std::string format_number(double v);

/// Comment preamble (schema version, command, parameters) then a header row.
void write_csv(std::ostream& os, const OutputRecord& rec);

/// One object with schema_version, command, parameters, columns and rows.
/// Numbers use the same 17-digit text as the CSV; non-finite values are null.
void write_json(std::ostream& os, const OutputRecord& rec);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ghshift::cli
