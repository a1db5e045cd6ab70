#include "cflow/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>

namespace cflow::io {

std::string format_value(double value, int sig_digits) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, sig_digits);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

void CsvWriter::comment(const std::string& line) { out_ << "# " << line << "\n"; }

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << columns[i];
  }
  out_ << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) { header(cells); }

void PrettyWriter::comment(const std::string& line) { out_ << "# " << line << "\n"; }

void PrettyWriter::header(const std::vector<std::string>& columns) { columns_ = columns; }

void PrettyWriter::row(const std::vector<std::string>& cells) { rows_.push_back(cells); }

void PrettyWriter::flush() {
  std::vector<std::size_t> width(columns_.size());
  for (std::size_t c = 0; c < columns_.size(); ++c) width[c] = columns_[c].size();
  for (const auto& r : rows_) {
    for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) {
      width[c] = std::max(width[c], r[c].size());
    }
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c > 0) out_ << "  ";
      out_ << cells[c];
      for (std::size_t pad = cells[c].size(); pad < width[c]; ++pad) out_ << ' ';
    }
    out_ << "\n";
  };
  line(columns_);
  for (const auto& r : rows_) line(r);
  rows_.clear();
}

}  // namespace cflow::io
