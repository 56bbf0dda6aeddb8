#include "qnet/protocols/scenario.hpp"

#include <cmath>

#include "qnet/util/errors.hpp"

namespace qnet {

void ScenarioResult::set_metric(const std::string& key, double value, std::optional<double> uncertainty) {
  metrics[key] = Metric{value, uncertainty};
}

double ScenarioResult::metric(const std::string& key) const {
  const auto it = metrics.find(key);
  if (it == metrics.end()) throw InvalidArgument("scenario '" + name + "' has no metric '" + key + "'");
  return it->second.value;
}

void check_probabilities(const ScenarioResult& result) {
  for (const auto& [table_name, table] : result.tables) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (!table.columns[c].starts_with("p_")) continue;
      for (double v : table.data[c])
        if (!(v >= -probability_slack && v <= 1.0 + probability_slack))
          throw InvalidState(result.name + ": column " + table_name + "." + table.columns[c] +
                             " leaves [0, 1]: " + std::to_string(v));
    }
  }
}

}  // namespace qnet
