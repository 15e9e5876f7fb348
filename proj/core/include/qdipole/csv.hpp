#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qd {

// %.12g, with -0 printed as 0
std::string format_number(double x);

using CsvCell = std::variant<double, std::int64_t, std::string>;

// Comment lines ("# key = value") followed by a header row and data rows.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void comment(const std::string& line);
  void provenance(const std::vector<std::pair<std::string, std::string>>& entries);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<CsvCell>& cells);

 private:
  std::ostream& out_;
  std::size_t columns_ = 0;
};

}  // namespace qd
