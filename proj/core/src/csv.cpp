#include "qdipole/csv.hpp"

#include <cstdio>

#include "qdipole/error.hpp"

namespace qd {

std::string format_number(double x) {
  if (x == 0) x = 0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace

void CsvWriter::comment(const std::string& line) { out_ << "# " << line << '\n'; }

void CsvWriter::provenance(const std::vector<std::pair<std::string, std::string>>& entries) {
  for (const auto& [k, v] : entries) out_ << "# " << k << " = " << v << '\n';
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  columns_ = columns.size();
  for (std::size_t k = 0; k < columns.size(); ++k) out_ << (k ? "," : "") << quote(columns[k]);
  out_ << '\n';
}

void CsvWriter::row(const std::vector<CsvCell>& cells) {
  if (columns_ && cells.size() != columns_) throw Error("csv row width does not match the header");
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) out_ << ',';
    std::visit(
        [this](const auto& v) {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, double>)
            out_ << format_number(v);
          else if constexpr (std::is_same_v<V, std::string>)
            out_ << quote(v);
          else
            out_ << v;
        },
        cells[k]);
  }
  out_ << '\n';
}

}  // namespace qd
