#include "qnet_app/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "qnet/analysis/trace_io.hpp"
#include "qnet/util/errors.hpp"
#include "qnet_app/registry.hpp"

namespace qnet::app {

namespace {

using nlohmann::json;

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void check_sections(const Config& cfg) {
  for (const auto& [name, section] : cfg.sections())
    if (name != device_section && name != drive_section && name != scenario_section && name != output_section)
      throw ConfigError("unknown section [" + name + "]");
  if (const auto* s = &cfg.sections(); s->count(output_section)) {
    for (const auto& [key, value] : s->at(output_section))
      if (std::find(output_keys().begin(), output_keys().end(), key) == output_keys().end())
        throw ConfigError("unknown key '" + key + "' in [output]");
  }
}

}  // namespace

std::filesystem::path default_output_root() {
  if (const char* env = std::getenv(output_dir_env); env && *env) return env;
  return "qnet_output";
}

RunOutcome execute(const Config& cfg) {
  check_sections(cfg);
  const auto name = cfg.find(scenario_section, "name");
  if (!name) throw ConfigError("missing scenario.name");
  const ScenarioSpec* spec = find_scenario(*name);
  if (!spec) throw ConfigError("unknown scenario '" + *name + "'");

  const NetworkModel device = build_device(cfg);
  const DriveConfig drive = build_drive(cfg);
  const ScenarioParams params(*spec, cfg);
  std::uint64_t seed = default_seed;
  if (const auto s = cfg.find(scenario_section, "seed")) {
    const long v = parse_integer(*s, "scenario.seed");
    if (v < 0) throw ConfigError("scenario.seed must be non-negative");
    seed = static_cast<std::uint64_t>(v);
  }
  if (const auto o = cfg.find(output_section, "overwrite")) parse_bool(*o, "output.overwrite");

  RunOutcome out;
  out.resolved = Config{};
  store_device(device, out.resolved);
  if (spec->uses_drive) store_drive(drive, out.resolved);
  out.resolved.set(scenario_section, "name", spec->name);
  out.resolved.set(scenario_section, "seed", std::to_string(seed));
  for (const auto& [key, value] : params.resolved()) out.resolved.set(scenario_section, key, value);
  if (const auto* s = &cfg.sections(); s->count(output_section))
    for (const auto& [key, value] : s->at(output_section)) out.resolved.set(output_section, key, value);

  out.directory = output_directory(cfg, default_output_root());
  out.resolved.set(output_section, "dir", out.directory.parent_path().string());

  out.result = spec->run(RunContext{device, drive, params, seed});
  check_probabilities(out.result);
  return out;
}

std::filesystem::path output_directory(const Config& cfg, const std::filesystem::path& fallback_root) {
  const auto dir = cfg.find(output_section, "dir");
  const std::filesystem::path root = dir ? std::filesystem::path(*dir) : fallback_root;
  return root / cfg.find(scenario_section, "name").value_or("scenario");
}

std::string metrics_json(const ScenarioResult& result) {
  json metrics = json::object();
  for (const auto& [key, m] : result.metrics)
    metrics[key] = {{"value", finite_or_null(m.value)},
                    {"uncertainty", m.uncertainty ? finite_or_null(*m.uncertainty) : json(nullptr)}};
  json doc = {{"scenario", result.name}, {"metrics", metrics}, {"notes", result.notes}};
  return doc.dump(2) + "\n";
}

void write_outputs(const RunOutcome& outcome) {
  namespace fs = std::filesystem;
  const fs::path& dir = outcome.directory;
  const bool overwrite = parse_bool(outcome.resolved.find(output_section, "overwrite").value_or("true"), "output.overwrite");
  if (fs::exists(dir) && !fs::is_empty(dir) && !overwrite)
    throw ConfigError("output directory '" + dir.string() + "' is not empty and output.overwrite is false");
  fs::create_directories(dir);
  for (const auto& [name, table] : outcome.result.tables) {
    std::ofstream f(dir / (name + ".csv"), std::ios::binary);
    write_trace_csv(f, table);
    if (!f) throw qnet::Error("failed writing " + (dir / (name + ".csv")).string());
  }
  std::ofstream(dir / "metrics.json", std::ios::binary) << metrics_json(outcome.result);
  std::ofstream(dir / "resolved_config.cfg", std::ios::binary) << outcome.resolved.serialize();
}

ExitCode classify_error(const std::exception& e, std::string& record) {
  ExitCode code = exit_scenario_error;
  std::string kind = "error";
  if (dynamic_cast<const ConfigError*>(&e)) {
    code = exit_config_error;
    kind = "config_error";
  } else if (const auto* t = dynamic_cast<const TruncationError*>(&e)) {
    code = exit_truncation;
    kind = t->kind();
  } else if (const auto* q = dynamic_cast<const qnet::Error*>(&e)) {
    kind = q->kind();
  }
  record = json{{"error", kind}, {"message", e.what()}, {"exit_code", static_cast<int>(code)}}.dump();
  return code;
}

}  // namespace qnet::app
