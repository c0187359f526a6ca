#pragma once

#include <array>
#include <string>
#include <vector>

namespace memctrl::csv {

/// Writes one CSV file: '.' decimal, ',' separator, header row first.
class Writer {
 public:
  explicit Writer(const std::string& path, const std::vector<std::string>& header);
  ~Writer();
  Writer(const Writer&) = delete;
  Writer& operator=(const Writer&) = delete;

  void row(const std::vector<double>& values);

 private:
  struct Impl;
  Impl* impl_;
};

/// Reads a numeric CSV with the given column count; skips a header row if the
/// first field is not numeric.  Returns one vector per column.
std::vector<std::vector<double>> read_table(const std::string& path, int columns);

std::string format_double(double v);

}  // namespace memctrl::csv
