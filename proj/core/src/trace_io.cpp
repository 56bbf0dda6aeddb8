#include "qnet/analysis/trace_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qnet/util/errors.hpp"

namespace qnet {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  return out;
}

}  // namespace

const std::vector<double>& TraceTable::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw InvalidArgument("trace table has no column '" + name + "'");
  return data[static_cast<std::size_t>(it - columns.begin())];
}

void TraceTable::add_column(std::string name, std::vector<double> values) {
  if (!data.empty() && values.size() != rows()) throw InvalidArgument("trace table column length mismatch");
  columns.push_back(std::move(name));
  data.push_back(std::move(values));
}

TraceTable read_trace_csv(std::istream& in) {
  TraceTable table;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (!line.empty() && line[0] != '#') break;
  }
  table.columns = split(line);
  if (table.columns.empty()) throw InvalidArgument("trace CSV: missing header row");
  table.data.resize(table.columns.size());
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split(line);
    if (cells.size() != table.columns.size())
      throw InvalidArgument("trace CSV: row " + std::to_string(row) + " has the wrong number of cells");
    for (std::size_t c = 0; c < cells.size(); ++c) {
      try {
        std::size_t used = 0;
        const double v = std::stod(cells[c], &used);
        if (used != cells[c].size()) throw std::invalid_argument("trailing characters");
        table.data[c].push_back(v);
      } catch (const std::exception&) {
        throw InvalidArgument("trace CSV: non-numeric cell at row " + std::to_string(row));
      }
    }
  }
  return table;
}

TraceTable read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open trace file " + path);
  return read_trace_csv(in);
}

void write_trace_csv(std::ostream& out, const TraceTable& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  char buf[64];
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.10g", table.data[c][r]);
      out << (c ? "," : "") << buf;
    }
    out << '\n';
  }
}

}  // namespace qnet
