#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qnet/analysis/fitting.hpp"
#include "qnet/analysis/gate_train.hpp"
#include "qnet/analysis/swap_fit.hpp"
#include "qnet/analysis/trace_io.hpp"
#include "qnet/util/errors.hpp"
#include "qnet/util/units.hpp"
#include "qnet_app/acceptance.hpp"
#include "qnet_app/config.hpp"
#include "qnet_app/registry.hpp"
#include "qnet_app/runner.hpp"

namespace fs = std::filesystem;
using namespace qnet;
using namespace qnet::app;
using nlohmann::json;

namespace {

int report(const std::exception& e) {
  std::string record;
  const ExitCode code = classify_error(e, record);
  std::cerr << record << '\n';
  return code;
}

fs::path bundled_config() {
  if (const char* env = std::getenv("QNET_TABLE1_CONFIG"); env && *env) return env;
  return QNET_TABLE1_CONFIG;
}

int cmd_run(const std::string& path, const std::vector<std::string>& sets, const std::string& out,
            const std::optional<long>& seed) {
  try {
    Config cfg = Config::load(path);
    for (const auto& s : sets) cfg.set_dotted(s);
    if (!out.empty()) cfg.set(output_section, "dir", out);
    if (seed) {
      if (*seed < 0) throw ConfigError("--seed must be non-negative");
      cfg.set(scenario_section, "seed", std::to_string(*seed));
    }
    const RunOutcome outcome = execute(cfg);
    write_outputs(outcome);
    std::cout << outcome.result.name << " -> " << outcome.directory.string() << '\n';
    for (const auto& [key, m] : outcome.result.metrics) std::cout << "  " << key << " = " << m.value << '\n';
    return exit_ok;
  } catch (const std::exception& e) {
    return report(e);
  }
}

int cmd_list() {
  for (const auto& s : scenario_registry()) std::printf("%-26s %s\n", s.name.c_str(), s.description.c_str());
  return exit_ok;
}

int cmd_reproduce(const std::string& only, const std::string& config, const std::string& out) {
  try {
    const Config cfg = Config::load(config.empty() ? bundled_config() : fs::path(config));
    const NetworkModel device = build_device(cfg);
    std::vector<int> ids;
    if (only.empty()) {
      for (const auto& c : acceptance_criteria()) ids.push_back(c.id);
    } else {
      const CriterionInfo* c = find_criterion(only);
      if (!c) throw ConfigError("unknown criterion '" + only + "'");
      ids.push_back(c->id);
    }
    std::vector<CriterionResult> results;
    bool all = true;
    for (int id : ids) {
      results.push_back(evaluate_criterion(id, device));
      std::cout << summary_line(results.back()) << '\n';
      for (const auto& line : results.back().checks) std::cout << "       " << line << '\n';
      std::cout.flush();
      all = all && results.back().pass;
    }
    const fs::path dir = (out.empty() ? default_output_root() : fs::path(out)) / "reproduce";
    fs::create_directories(dir);
    std::ofstream(dir / "acceptance.json", std::ios::binary) << acceptance_json(results);
    return all ? exit_ok : exit_acceptance_failure;
  } catch (const std::exception& e) {
    return report(e);
  }
}

double time_scale(const std::string& column) {
  if (column.ends_with("_ns")) return ns;
  if (column.ends_with("_us")) return us;
  if (column.ends_with("_s")) return 1.0;
  throw ConfigError("time column '" + column + "' needs a unit suffix (_ns, _us or _s)");
}

int cmd_fit(const std::string& path, const std::string& model, std::string time_column, std::string column) {
  try {
    const TraceTable table = read_trace_csv(path);
    if (table.columns.size() < 2) throw ConfigError("trace needs a time column and at least one observable");
    if (time_column.empty()) time_column = table.columns.front();
    if (column.empty()) column = table.columns.at(1);
    const std::vector<double>& y = table.column(column);
    std::vector<double> t = table.column(time_column);
    json report{{"file", path}, {"model", model}, {"time_column", time_column}, {"column", column}};
    if (model == "gate_train") {
      const GateTrainFit f = fit_gate_train(t, y);
      report["loss_per_gate"] = f.loss_per_gate;
      report["loss_stderr"] = f.loss_stderr;
      report["amplitude"] = f.amplitude;
      report["residual_rms"] = f.residual_rms;
    } else {
      const double scale = time_scale(time_column);
      for (double& v : t) v *= scale;
      if (model == "swap") {
        const SwapFit f = fit_swap_decay(t, y);
        report["omega_mhz"] = f.omega / (two_pi * 1e6);
        report["omega_stderr_mhz"] = f.omega_stderr() / (two_pi * 1e6);
        report["tau_us"] = f.tau_infinite ? json(nullptr) : json(f.tau / us);
        report["tau_infinite"] = f.tau_infinite;
        report["period_ns"] = f.period() / ns;
        report["swap_time_ns"] = f.swap_time() / ns;
        report["p0"] = f.p0;
        report["residual_rms"] = f.residual_rms;
      } else if (model == "exponential" || model == "exponential_offset") {
        const ExponentialFit f = fit_exponential(t, y, model == "exponential_offset");
        const double tc = f.time_constant();
        report["tau_us"] = std::isfinite(tc) ? json(tc / us) : json(nullptr);
        report["amplitude"] = f.amplitude;
        report["offset"] = f.offset;
        report["residual_rms"] = f.residual_rms;
      } else if (model == "damped_cosine") {
        if (t.size() < 4) throw ConfigError("damped_cosine needs at least four samples");
        const double span = t.back() - t.front();
        const double dt = span / static_cast<double>(t.size() - 1);
        const DampedCosineFit f = fit_damped_cosine(t, y, two_pi / span, std::numbers::pi / dt);
        report["frequency_mhz"] = f.omega / (two_pi * 1e6);
        report["frequency_stderr_mhz"] = f.omega_stderr / (two_pi * 1e6);
        report["decay_us"] = f.rate > 0.0 ? json(1.0 / f.rate / us) : json(nullptr);
        report["amplitude"] = f.amplitude;
        report["offset"] = f.offset;
        report["residual_rms"] = f.residual_rms;
      } else {
        throw ConfigError("unknown fit model '" + model + "'");
      }
    }
    std::cout << report.dump(2) << '\n';
    return exit_ok;
  } catch (const qnet::InvalidArgument& e) {
    return report(ConfigError(e.what()));
  } catch (const std::exception& e) {
    return report(e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modular two-qubit network simulator"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run the scenario named in a config file");
  std::string config_path, out_dir;
  std::vector<std::string> sets;
  std::optional<long> seed;
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--set", sets, "Override section.key=value")->take_all();
  run->add_option("--out", out_dir, "Output root directory");
  run->add_option("--seed", seed, "Readout sampling seed");

  app.add_subcommand("list", "List scenarios");

  auto* repro = app.add_subcommand("reproduce", "Run the acceptance criteria against the bundled device");
  std::string only, repro_config, repro_out;
  repro->add_option("--only", only, "Criterion number or name");
  repro->add_option("--config", repro_config, "Device config (default: bundled table1.cfg)");
  repro->add_option("--out", repro_out, "Output root directory");

  auto* fit = app.add_subcommand("fit", "Fit a trace CSV and print a JSON report");
  std::string fit_path, fit_model = "swap", time_column, column;
  fit->add_option("csv", fit_path, "Trace CSV")->required();
  fit->add_option("--model", fit_model, "swap | exponential | exponential_offset | damped_cosine | gate_train");
  fit->add_option("--time-column", time_column, "Time column (default: first)");
  fit->add_option("--column", column, "Observable column (default: second)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config_error;
  }

  if (*run) return cmd_run(config_path, sets, out_dir, seed);
  if (app.got_subcommand("list")) return cmd_list();
  if (*repro) return cmd_reproduce(only, repro_config, repro_out);
  if (*fit) return cmd_fit(fit_path, fit_model, time_column, column);
  return exit_config_error;
}
