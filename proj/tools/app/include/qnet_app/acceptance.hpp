#pragma once

#include <string>
#include <vector>

#include "qnet/model/network.hpp"

namespace qnet::app {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  /// Reference value, simulated value and tolerance as printed in the table.
  std::string reference;
  std::string simulated;
  std::string tolerance;
  /// One line per sub-check.
  std::vector<std::string> checks;
};

struct CriterionInfo {
  int id;
  std::string name;
  std::string title;
};

const std::vector<CriterionInfo>& acceptance_criteria();

/// Accepts the number ("4") or the name ("pulsed_train").
const CriterionInfo* find_criterion(const std::string& key);

/// Runs one criterion against the device. Exceptions inside a criterion are
/// reported as a failed check, never propagated.
CriterionResult evaluate_criterion(int id, const NetworkModel& device);

/// `[PASS] 4 pulsed_train  reference=... simulated=... tolerance=...`
std::string summary_line(const CriterionResult& r);
std::string acceptance_json(const std::vector<CriterionResult>& results);

}  // namespace qnet::app
