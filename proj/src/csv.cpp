#include "randbasis/csv.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace randbasis {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : path_(path), out_(path), columns_(header.size()) {
  if (!out_) {
    throw std::runtime_error("CsvWriter: cannot open '" + path + "' for writing");
  }
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) {
    throw std::invalid_argument("CsvWriter: wrong number of cells for '" + path_ + "'");
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
  if (!out_) {
    throw std::runtime_error("CsvWriter: write failed on '" + path_ + "'");
  }
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("read_csv: cannot open '" + path + "'");
  }
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (line_no == 1) {
      table.header = cells;
      continue;
    }
    if (cells.size() != table.header.size()) {
      std::ostringstream msg;
      msg << path << ":" << line_no << ": expected " << table.header.size() << " cells, found "
          << cells.size();
      throw std::runtime_error(msg.str());
    }
    table.rows.push_back(std::move(cells));
  }
  if (line_no == 0) {
    throw std::runtime_error(path + ":1: missing header row");
  }
  return table;
}

double parse_double(const std::string& cell, const std::string& context) {
  std::size_t consumed = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &consumed);
  } catch (const std::exception&) {
    throw std::runtime_error(context + ": malformed number '" + cell + "'");
  }
  if (consumed != cell.size()) {
    throw std::runtime_error(context + ": malformed number '" + cell + "'");
  }
  return v;
}

}  // namespace randbasis
