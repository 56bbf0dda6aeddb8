#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qnet/analysis/trace_io.hpp"

namespace qnet {

struct Metric {
  double value = 0.0;
  std::optional<double> uncertainty;
};

/// Output of one figure-level experiment: one table per observable map and
/// named scalar figures of merit.
struct ScenarioResult {
  std::string name;
  std::map<std::string, TraceTable> tables;
  std::map<std::string, Metric> metrics;
  std::vector<std::string> notes;

  void set_metric(const std::string& key, double value, std::optional<double> uncertainty = std::nullopt);
  bool has_metric(const std::string& key) const { return metrics.contains(key); }
  double metric(const std::string& key) const;
};

inline constexpr double probability_slack = 1e-6;

/// Throws InvalidState when a column named p_* leaves [-1e-6, 1 + 1e-6].
void check_probabilities(const ScenarioResult& result);

}  // namespace qnet
