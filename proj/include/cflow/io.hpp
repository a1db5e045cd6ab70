#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cflow::io {

// Locale-independent decimal formatting (std::to_chars), default 11
// significant digits -- enough to round-trip the published tables.
std::string format_value(double value, int sig_digits = 11);

// '#'-prefixed metadata lines followed by a header row; rows via write_row.
// No timestamps or host data: identical invocations must emit identical bytes.
class CsvWriter {
public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void comment(const std::string& line);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);

private:
  std::ostream& out_;
};

// Fixed-width human-readable table with the same cell content as the CSV.
class PrettyWriter {
public:
  explicit PrettyWriter(std::ostream& out) : out_(out) {}

  void comment(const std::string& line);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);
  void flush();

private:
  std::ostream& out_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace cflow::io
