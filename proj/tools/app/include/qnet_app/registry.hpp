#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qnet/model/network.hpp"
#include "qnet/protocols/scenario.hpp"
#include "qnet_app/config.hpp"

namespace qnet::app {

struct ParamSpec {
  std::string key;
  /// Empty means "unset" (the scenario picks its own value).
  std::string default_value;
  std::string help;
};

struct ScenarioSpec;

/// Typed view of the [scenario] section for one scenario. Every lookup is
/// checked against the declared parameters.
class ScenarioParams {
 public:
  ScenarioParams(const ScenarioSpec& spec, const Config& cfg);

  double number(const std::string& key) const;
  long integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::string text(const std::string& key) const;
  std::optional<double> optional_number(const std::string& key) const;

  /// Value of every declared parameter after defaults are applied.
  const std::map<std::string, std::string>& resolved() const { return values_; }

 private:
  const std::string& raw(const std::string& key) const;
  std::string scenario_;
  std::map<std::string, std::string> values_;
};

struct RunContext {
  NetworkModel device;
  DriveConfig drive;
  ScenarioParams params;
  std::uint64_t seed = 0;
};

struct ScenarioSpec {
  std::string name;
  std::string description;
  std::vector<ParamSpec> params;
  /// Whether the [drive] section feeds the scenario.
  bool uses_drive = false;
  std::function<ScenarioResult(const RunContext&)> run;
};

inline constexpr std::uint64_t default_seed = 1234;

const std::vector<ScenarioSpec>& scenario_registry();
/// nullptr when unknown.
const ScenarioSpec* find_scenario(const std::string& name);

}  // namespace qnet::app
