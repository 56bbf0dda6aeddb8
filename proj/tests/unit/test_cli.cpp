#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qnet_app/config.hpp"
#include "qnet_app/registry.hpp"
#include "qnet_app/runner.hpp"

using namespace qnet;
using namespace qnet::app;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qnet_cli_tests_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

Config small_dual_rail(const fs::path& out) {
  Config cfg = Config::load(QNET_TEST_CONFIG);
  cfg.set("scenario", "name", "dual_rail_t1");
  cfg.set("scenario", "delay_points", "5");
  cfg.set("scenario", "shots", "400");
  cfg.set("scenario", "bootstrap_resamples", "0");
  cfg.set("output", "dir", out.string());
  return cfg;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(QNET_BINARY) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, ParsesSectionsAndComments) {
  std::istringstream in("# header\n[device]\nq1_t1_us = 50 ; inline\n\n[scenario]\nname=bus_lifetime\n");
  const Config cfg = Config::parse(in);
  EXPECT_EQ(cfg.find("device", "q1_t1_us"), "50");
  EXPECT_EQ(cfg.find("scenario", "name"), "bus_lifetime");
  EXPECT_FALSE(cfg.find("device", "q2_t1_us").has_value());
}

TEST(Config, RejectsMalformedInput) {
  std::istringstream dup("[device]\nq1_t1_us = 1\nq1_t1_us = 2\n");
  EXPECT_THROW(Config::parse(dup), ConfigError);
  std::istringstream orphan("q1_t1_us = 1\n");
  EXPECT_THROW(Config::parse(orphan), ConfigError);
  std::istringstream noeq("[device]\nq1_t1_us\n");
  EXPECT_THROW(Config::parse(noeq), ConfigError);
  EXPECT_THROW(Config::load("/nonexistent/qnet.cfg"), ConfigError);
}

TEST(Config, NumberParsing) {
  EXPECT_DOUBLE_EQ(parse_number("6.2", "x"), 6.2);
  EXPECT_DOUBLE_EQ(parse_number("2e5", "x"), 2e5);
  EXPECT_TRUE(std::isinf(parse_number("inf", "x")));
  EXPECT_THROW(parse_number("6.2us", "x"), ConfigError);
  EXPECT_THROW(parse_integer("1.5", "x"), ConfigError);
  EXPECT_TRUE(parse_bool("true", "x"));
  EXPECT_FALSE(parse_bool("false", "x"));
  EXPECT_THROW(parse_bool("maybe", "x"), ConfigError);
}

TEST(Config, BundledDeviceMatchesReference) {
  const NetworkModel m = build_device(Config::load(QNET_TEST_CONFIG));
  const NetworkModel ref = NetworkModel::reference_device();
  EXPECT_NEAR(m.q1.frequency.in_mhz(), ref.q1.frequency.in_mhz(), 1e-9);
  EXPECT_NEAR(m.q2.t2_ramsey_s, ref.q2.t2_ramsey_s, 1e-15);
  EXPECT_NEAR(m.bus.lifetime_s, ref.bus.lifetime_s, 1e-15);
  EXPECT_NEAR(m.chi.q1_q2.in_hz(), 8e3, 1e-6);
  EXPECT_EQ(m.dephasing, DephasingSource::Echo);
}

TEST(Config, DottedOverridesAndValidation) {
  Config cfg = Config::load(QNET_TEST_CONFIG);
  cfg.set_dotted("device.bus_lifetime_us=10");
  EXPECT_NEAR(build_device(cfg).bus.lifetime_s, 10e-6, 1e-15);
  EXPECT_THROW(cfg.set_dotted("device.bus_lifetime_us"), ConfigError);
  cfg.set("device", "q1_t2e_us", "500");
  EXPECT_THROW(build_device(cfg), ConfigError);
  Config q = Config::load(QNET_TEST_CONFIG);
  q.set("device", "bus_quality_factor", "3e5");
  EXPECT_THROW(build_device(q), ConfigError);
  q.set("device", "bus_quality_factor", "2.015e5");
  EXPECT_NO_THROW(build_device(q));
}

TEST(Config, StoreAndRebuildRoundTrip) {
  const NetworkModel ref = NetworkModel::reference_device();
  Config cfg;
  store_device(ref, cfg);
  std::istringstream in(cfg.serialize());
  const NetworkModel back = build_device(Config::parse(in));
  EXPECT_NEAR(back.q2.frequency.value(), ref.q2.frequency.value(), 1e-3);
  EXPECT_NEAR(back.q1.t2_echo_s, ref.q1.t2_echo_s, 1e-15);
}

TEST(Runner, UnknownNamesAreConfigErrors) {
  Config cfg = Config::load(QNET_TEST_CONFIG);
  cfg.set("device", "q3_t1_us", "1");
  EXPECT_THROW(execute(cfg), ConfigError);
  cfg = Config::load(QNET_TEST_CONFIG);
  cfg.set("devices", "q1_t1_us", "1");
  EXPECT_THROW(execute(cfg), ConfigError);
  cfg = Config::load(QNET_TEST_CONFIG);
  cfg.set("scenario", "name", "warp_drive");
  EXPECT_THROW(execute(cfg), ConfigError);
  cfg = Config::load(QNET_TEST_CONFIG);
  cfg.set("scenario", "time_pointz", "5");
  EXPECT_THROW(execute(cfg), ConfigError);
}

TEST(Runner, RegistryCoversEveryScenario) {
  EXPECT_GE(scenario_registry().size(), 15u);
  for (const auto& s : scenario_registry()) {
    EXPECT_EQ(find_scenario(s.name), &s);
    EXPECT_FALSE(s.description.empty());
  }
  EXPECT_EQ(find_scenario("nope"), nullptr);
}

TEST(Runner, SameSeedGivesIdenticalFiles) {
  const fs::path a = scratch("seed_a"), b = scratch("seed_b");
  const RunOutcome ra = execute(small_dual_rail(a));
  write_outputs(ra);
  const RunOutcome rb = execute(small_dual_rail(b));
  write_outputs(rb);
  for (const auto& entry : fs::directory_iterator(ra.directory)) {
    const fs::path other = rb.directory / entry.path().filename();
    if (entry.path().filename() == "resolved_config.cfg") continue;
    EXPECT_EQ(slurp(entry.path()), slurp(other)) << entry.path().filename();
  }
  EXPECT_TRUE(fs::exists(ra.directory / "dual_rail.csv"));
  EXPECT_TRUE(fs::exists(ra.directory / "metrics.json"));
}

TEST(Runner, ResolvedConfigReproducesRun) {
  const fs::path first = scratch("resolved_first");
  const RunOutcome r1 = execute(small_dual_rail(first));
  write_outputs(r1);
  Config again = Config::load(r1.directory / "resolved_config.cfg");
  const fs::path second = scratch("resolved_second");
  again.set("output", "dir", second.string());
  const RunOutcome r2 = execute(again);
  write_outputs(r2);
  EXPECT_EQ(slurp(r1.directory / "dual_rail.csv"), slurp(r2.directory / "dual_rail.csv"));
  EXPECT_EQ(slurp(r1.directory / "metrics.json"), slurp(r2.directory / "metrics.json"));
  EXPECT_EQ(r2.resolved.find("scenario", "seed"), r1.resolved.find("scenario", "seed"));
}

TEST(Runner, RefusesToOverwriteWhenAsked) {
  const fs::path out = scratch("overwrite");
  Config cfg = small_dual_rail(out);
  write_outputs(execute(cfg));
  cfg.set("output", "overwrite", "false");
  EXPECT_THROW(write_outputs(execute(cfg)), ConfigError);
}

TEST(Runner, MetricsJsonWritesNullForNonFinite) {
  ScenarioResult r;
  r.name = "x";
  r.set_metric("tau_us", std::numeric_limits<double>::infinity());
  r.set_metric("rate", 2.5, 0.1);
  const std::string json = metrics_json(r);
  EXPECT_NE(json.find("null"), std::string::npos);
  EXPECT_NE(json.find("2.5"), std::string::npos);
}

TEST(Binary, ExitCodes) {
  const fs::path out = scratch("binary");
  EXPECT_EQ(run_binary("list"), exit_ok);
  EXPECT_EQ(run_binary("run /nonexistent.cfg"), exit_config_error);
  EXPECT_EQ(run_binary(std::string("run ") + QNET_TEST_CONFIG + " --set scenario.name=warp --out " + out.string()),
            exit_config_error);
  EXPECT_FALSE(fs::exists(out / "warp"));
  EXPECT_EQ(run_binary(std::string("run ") + QNET_TEST_CONFIG +
                       " --set scenario.name=resonant_raman --set device.bus_dim=2 --out " + out.string()),
            exit_truncation);
  EXPECT_EQ(run_binary(std::string("run ") + QNET_TEST_CONFIG +
                       " --set scenario.name=sideband_chevron --set scenario.detuning_points=3"
                       " --set scenario.time_points=41 --set scenario.time_max_us=1 --out " + out.string()),
            exit_ok);
  EXPECT_TRUE(fs::exists(out / "sideband_chevron" / "chevron.csv"));
  EXPECT_EQ(run_binary("frobnicate"), exit_config_error);
}
