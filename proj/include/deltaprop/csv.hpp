#ifndef DELTAPROP_CSV_HPP
#define DELTAPROP_CSV_HPP

#include <fstream>
#include <string>
#include <vector>

namespace deltaprop::csv {

/// Deterministic CSV writer: fixed column order, 17 significant digits in
/// scientific notation, so repeated runs are byte-identical.
class Writer {
 public:
  explicit Writer(const std::string& path);

  void header(const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);
  bool good() const { return static_cast<bool>(out_); }

  static std::string format(double v);

 private:
  std::ofstream out_;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

Table read(const std::string& path);

}  // namespace deltaprop::csv

#endif
