#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace randbasis {

/// Round-trip-exact decimal rendering of a double.
std::string fmt_double(double v);

/// Header-first CSV writer with deterministic formatting.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
  std::size_t columns_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 if absent
};

/// Parses a whole CSV file; errors carry the path and 1-based line number.
CsvTable read_csv(const std::string& path);

double parse_double(const std::string& cell, const std::string& context);

}  // namespace randbasis
