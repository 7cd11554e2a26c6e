#include "deltaprop/csv.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace deltaprop::csv {

Writer::Writer(const std::string& path) : out_(path) {
  if (!out_) {
    throw std::runtime_error("csv::Writer: cannot open " + path);
  }
}

std::string Writer::format(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

void Writer::header(const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out_ << ',';
    out_ << columns[i];
  }
  out_ << '\n';
}

void Writer::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ',';
    out_ << format(values[i]);
  }
  out_ << '\n';
}

Table read(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("csv::read: cannot open " + path);
  }
  Table t;
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("csv::read: empty file " + path);
  }
  std::istringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) t.columns.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream rs(line);
    while (std::getline(rs, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != t.columns.size()) {
      throw std::runtime_error("csv::read: ragged row in " + path);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace deltaprop::csv
