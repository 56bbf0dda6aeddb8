#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qnet {

/// Column-oriented numeric table with a mandatory header row.
struct TraceTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> data;  // data[column][row]

  std::size_t rows() const { return data.empty() ? 0 : data.front().size(); }
  const std::vector<double>& column(const std::string& name) const;
  void add_column(std::string name, std::vector<double> values);
};

TraceTable read_trace_csv(std::istream& in);
TraceTable read_trace_csv(const std::string& path);
/// Values printed with %.10g so identical inputs give identical bytes.
void write_trace_csv(std::ostream& out, const TraceTable& table);

}  // namespace qnet
