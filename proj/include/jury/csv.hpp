#pragma once

#include <optional>
#include <string>
#include <vector>

namespace jury {

/// Fixed-format number rendering used by every CSV the tools write (%.10g),
/// so identical doubles always produce identical bytes.
std::string format_number(double v);
std::string format_optional(const std::optional<double>& v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  /// Row length must match the header.
  void add_row(std::vector<std::string> row);

  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }
  std::string to_string() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace jury
