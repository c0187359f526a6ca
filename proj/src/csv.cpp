#include "memctrl/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "memctrl/errors.hpp"

namespace memctrl::csv {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Writer::Impl {
  std::ofstream out;
};

Writer::Writer(const std::string& path, const std::vector<std::string>& header)
    : impl_(new Impl) {
  impl_->out.open(path);
  if (!impl_->out) throw Error("csv: cannot open " + path + " for writing");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) impl_->out << ',';
    impl_->out << header[i];
  }
  impl_->out << '\n';
}

Writer::~Writer() { delete impl_; }

void Writer::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) impl_->out << ',';
    impl_->out << format_double(values[i]);
  }
  impl_->out << '\n';
}

std::vector<std::vector<double>> read_table(const std::string& path, int columns) {
  std::ifstream in(path);
  if (!in) throw Error("csv: cannot open " + path);
  std::vector<std::vector<double>> table(columns);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<double> row;
    bool numeric = true;
    while (std::getline(ss, field, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(field, &used));
        if (used == 0) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (first && !numeric) {
      first = false;
      continue;  // header row
    }
    first = false;
    if (!numeric || static_cast<int>(row.size()) != columns)
      throw Error("csv: malformed row in " + path + ": '" + line + "'");
    for (int c = 0; c < columns; ++c) table[c].push_back(row[c]);
  }
  if (table[0].empty()) throw Error("csv: no data rows in " + path);
  return table;
}

}  // namespace memctrl::csv
