#include "qnet_app/registry.hpp"

#include <algorithm>

#include "qnet/protocols/detuned.hpp"
#include "qnet/protocols/resonant.hpp"
#include "qnet/protocols/simulation.hpp"

namespace qnet::app {

namespace {

std::vector<AngularFrequency> mhz_grid(double lo, double hi, long n) {
  std::vector<AngularFrequency> out;
  for (double f : linear_grid(lo, hi, static_cast<std::size_t>(n))) out.push_back(AngularFrequency::mhz(f));
  return out;
}

std::vector<double> time_grid(double max_s, long n) { return linear_grid(0.0, max_s, static_cast<std::size_t>(n)); }

long points(const ScenarioParams& p, const std::string& key) {
  const long n = p.integer(key);
  if (n < 2) throw ConfigError("scenario." + key + " must be at least 2");
  return n;
}

DriveConfig detuned_drive(const ScenarioParams& p) {
  DriveConfig d = DriveConfig::resonant(AngularFrequency::mhz(p.number("omega_mhz")));
  d.detuning = AngularFrequency::mhz(p.number("bus_detuning_mhz"));
  return d;
}

const std::vector<ParamSpec> detuned_drive_params{
    {"omega_mhz", "6.6", "sideband rate of both pumps"},
    {"bus_detuning_mhz", "31.43", "common qubit-bus detuning Delta"},
};

std::vector<ParamSpec> with(std::vector<ParamSpec> base, const std::vector<ParamSpec>& extra) {
  base.insert(base.end(), extra.begin(), extra.end());
  return base;
}

ScenarioSpec dual_rail_spec(DualRailKind kind, const std::string& max_us, const std::string& n,
                            const std::string& what) {
  const std::string name = std::string("dual_rail_") + to_string(kind);
  return {name,
          what,
          with(detuned_drive_params,
               {{"frame_detuning_mhz", "31.43", "idle-frame rate of the relative phase"},
                {"delay_max_us", max_us, "longest delay"},
                {"delay_points", n, "number of delays"},
                {"shots", "2000", "readout shots per delay"},
                {"bootstrap_resamples", "200", "parametric resamples for fit uncertainties"},
                {"pi_duration_ns", "", "overrides the exact-splitting pi duration"},
                {"readout", "reference", "reference or ideal assignment matrices"}}),
          false,
          [kind](const RunContext& c) {
            DualRailOptions o;
            o.kind = kind;
            o.drive = detuned_drive(c.params);
            o.frame_detuning = AngularFrequency::mhz(c.params.number("frame_detuning_mhz"));
            o.delays = time_grid(c.params.number("delay_max_us") * us, points(c.params, "delay_points"));
            o.shots = c.params.integer("shots");
            o.bootstrap_resamples = static_cast<int>(c.params.integer("bootstrap_resamples"));
            o.seed = c.seed;
            if (auto pi = c.params.optional_number("pi_duration_ns")) o.pi_duration_s = *pi * ns;
            const std::string readout = c.params.text("readout");
            if (readout == "ideal")
              o.readout = ReadoutModel::ideal(2);
            else if (readout != "reference")
              throw ConfigError("scenario.readout must be 'reference' or 'ideal'");
            return dual_rail_experiment(c.device, o);
          }};
}

std::vector<ScenarioSpec> build_registry() {
  std::vector<ScenarioSpec> r;

  r.push_back({"swap_efficiency_sweep",
               "Swap inefficiency versus number of beam-splitter steps N",
               {{"omega_mhz", "5", "sideband rate"},
                {"n_max", "10", "largest N"},
                {"include_qubit_loss", "true", "keep qubit T1/T2 (false: bus loss only)"},
                {"qubit_coherence_us", "", "sets T1 = T2 of both qubits"},
                {"bus_quality_factor", "", "overrides the bus lifetime through Q_b = omega_b tau_b"}},
               false,
               [](const RunContext& c) {
                 SwapEfficiencyOptions o;
                 o.omega = AngularFrequency::mhz(c.params.number("omega_mhz"));
                 o.n_max = static_cast<int>(c.params.integer("n_max"));
                 o.include_qubit_loss = c.params.flag("include_qubit_loss");
                 o.bus_quality_factor = c.params.optional_number("bus_quality_factor");
                 if (auto t = c.params.optional_number("qubit_coherence_us")) o.qubit_coherence_s = *t * us;
                 return swap_efficiency_sweep(c.device, o);
               }});

  r.push_back({"sideband_chevron",
               "Qubit-bus sideband chevron over detuning and time",
               {{"qubit", "1", "driven qubit (1 or 2)"},
                {"omega_mhz", "5", "sideband rate"},
                {"detuning_span_mhz", "10", "detunings cover +-span"},
                {"detuning_points", "41", "number of detunings"},
                {"time_max_us", "4", "longest drive time"},
                {"time_points", "801", "number of times"}},
               false,
               [](const RunContext& c) {
                 ChevronOptions o;
                 o.qubit = static_cast<int>(c.params.integer("qubit"));
                 o.omega = AngularFrequency::mhz(c.params.number("omega_mhz"));
                 const double span = c.params.number("detuning_span_mhz");
                 o.detunings = mhz_grid(-span, span, points(c.params, "detuning_points"));
                 o.times = time_grid(c.params.number("time_max_us") * us, points(c.params, "time_points"));
                 return sideband_chevron(c.device, o);
               }});

  r.push_back({"bus_lifetime",
               "Swap-in, hold, swap-out measurement of the bus lifetime",
               {{"omega_mhz", "5", "sideband rate"},
                {"hold_max_us", "20", "longest hold"},
                {"hold_points", "41", "number of holds"}},
               false,
               [](const RunContext& c) {
                 BusLifetimeOptions o;
                 o.omega = AngularFrequency::mhz(c.params.number("omega_mhz"));
                 o.holds = time_grid(c.params.number("hold_max_us") * us, points(c.params, "hold_points"));
                 return measure_bus_lifetime(c.device, o);
               }});

  r.push_back({"resonant_raman",
               "Continuous resonant Raman swaps between the qubits with swap-decay fit",
               {{"time_max_us", "10", "longest drive time"}, {"time_points", "2001", "number of times"}},
               true,
               [](const RunContext& c) {
                 return resonant_raman(c.device, c.drive,
                                       time_grid(c.params.number("time_max_us") * us, points(c.params, "time_points")))
                     .result;
               }});

  r.push_back({"pulsed_swap_train",
               "Train of shaped SWAP gates with exponential loss fit",
               {{"omega_mhz", "5", "sideband rate"},
                {"t_eff_ns", "142", "effective gate time"},
                {"sigma_ns", "4", "tanh edge width"},
                {"padding_ns", "40", "total length minus t_eff"},
                {"n_gates", "20", "longest train"}},
               false,
               [](const RunContext& c) {
                 SwapTrainOptions o;
                 o.omega = AngularFrequency::mhz(c.params.number("omega_mhz"));
                 o.pulse = PulseShape::padded(c.params.number("t_eff_ns") * ns, c.params.number("sigma_ns") * ns,
                                              c.params.number("padding_ns") * ns);
                 o.n_gates = static_cast<int>(c.params.integer("n_gates"));
                 return pulsed_swap_train(c.device, o);
               }});

  r.push_back({"gate_time_optimization",
               "Effective gate time minimising the coherent residual of a gate train",
               {{"omega_mhz", "5", "sideband rate"},
                {"t_min_ns", "130", "lower end of the scan"},
                {"t_max_ns", "155", "upper end of the scan"},
                {"n_grid", "21", "grid points"},
                {"n_gates", "20", "train length per candidate"}},
               false,
               [](const RunContext& c) {
                 GateTimeOptions o;
                 o.omega = AngularFrequency::mhz(c.params.number("omega_mhz"));
                 o.t_min_s = c.params.number("t_min_ns") * ns;
                 o.t_max_s = c.params.number("t_max_ns") * ns;
                 o.n_grid = static_cast<int>(c.params.integer("n_grid"));
                 o.n_gates = static_cast<int>(c.params.integer("n_gates"));
                 return gate_time_optimization(c.device, o);
               }});

  r.push_back({"stroboscopic_bell",
               "Half swap into the bus, full swap out, XX correlator and Bell fidelity",
               {{"omega_mhz", "5", "sideband rate"},
                {"shaped", "true", "tanh flat-top pulses instead of rectangular"},
                {"sigma_ns", "4", "tanh edge width"},
                {"padding_ns", "40", "total length minus t_eff"},
                {"calibrate", "false", "refine the pi time on a simulated pulse train"},
                {"phase_points", "73", "points of the XX_phi curve"}},
               false,
               [](const RunContext& c) {
                 BellOptions o;
                 o.omega = AngularFrequency::mhz(c.params.number("omega_mhz"));
                 o.shaped = c.params.flag("shaped");
                 o.sigma_s = c.params.number("sigma_ns") * ns;
                 o.padding_s = c.params.number("padding_ns") * ns;
                 o.calibrate = c.params.flag("calibrate");
                 o.n_phases = static_cast<int>(points(c.params, "phase_points"));
                 return stroboscopic_bell(c.device, o);
               }});

  r.push_back({"raman_rate_matching",
               "Iterative matching of pump detunings and amplitudes against hidden drive errors",
               {{"omega_mhz", "5.04", "nominal sideband rate"},
                {"hidden_bus_detuning_mhz", "0.36", "bus detuning error of the simulated hardware"},
                {"hidden_omega2_scale", "0.97", "amplitude error of pump 2"},
                {"checkpoints", "4", "swap times compared per iteration"},
                {"max_iterations", "60", "sweep budget"},
                {"threshold", "1e-5", "stop once the RMS mismatch falls below"}},
               false,
               [](const RunContext& c) {
                 RateMatchScenarioOptions o;
                 o.omega = AngularFrequency::mhz(c.params.number("omega_mhz"));
                 o.hidden_bus_detuning = AngularFrequency::mhz(c.params.number("hidden_bus_detuning_mhz"));
                 o.hidden_omega2_scale = c.params.number("hidden_omega2_scale");
                 o.match.checkpoints = static_cast<int>(c.params.integer("checkpoints"));
                 o.match.max_iterations = static_cast<int>(c.params.integer("max_iterations"));
                 o.match.threshold = c.params.number("threshold");
                 return raman_rate_matching(c.device, o);
               }});

  r.push_back({"detuned_chevron",
               "Detuned Raman exchange over relative detuning and time",
               with(detuned_drive_params, {{"delta_span_mhz", "2", "relative detunings cover +-span"},
                                           {"delta_points", "21", "number of relative detunings"},
                                           {"time_max_us", "3", "longest drive time"},
                                           {"time_points", "1501", "number of times"}}),
               false,
               [](const RunContext& c) {
                 DetunedChevronOptions o;
                 o.drive = detuned_drive(c.params);
                 const double span = c.params.number("delta_span_mhz");
                 o.deltas = mhz_grid(-span, span, points(c.params, "delta_points"));
                 o.times = time_grid(c.params.number("time_max_us") * us, points(c.params, "time_points"));
                 return detuned_chevron(c.device, o);
               }});

  r.push_back(dual_rail_spec(DualRailKind::T1, "40", "41", "Dual-rail logical T1 with gg post-selection"));
  r.push_back(dual_rail_spec(DualRailKind::Ramsey, "2", "501", "Dual-rail logical Ramsey fringes"));
  r.push_back(dual_rail_spec(DualRailKind::Echo, "20", "41", "Dual-rail logical echo decay"));

  r.push_back({"dual_rail_pi_calibration",
               "Quadratic calibration of the dual-rail pi duration",
               with(detuned_drive_params, {{"predicted_pi_ns", "", "scan centre; default from the exact splitting"}}),
               false,
               [](const RunContext& c) {
                 PiCalibrationScenarioOptions o;
                 o.drive = detuned_drive(c.params);
                 if (auto pi = c.params.optional_number("predicted_pi_ns")) o.predicted_pi_s = *pi * ns;
                 return dual_rail_pi_calibration(c.device, o);
               }});

  r.push_back({"cross_kerr_ramsey",
               "Qubit-1 Ramsey with qubit 2 in g or e; extracts the qubit-qubit cross-Kerr",
               {{"artificial_detuning_mhz", "0.5", "Ramsey detuning"},
                {"delay_max_us", "8", "longest delay"},
                {"delay_points", "801", "number of delays"}},
               false,
               [](const RunContext& c) {
                 CrossKerrOptions o;
                 o.artificial_detuning = AngularFrequency::mhz(c.params.number("artificial_detuning_mhz"));
                 o.delays = time_grid(c.params.number("delay_max_us") * us, points(c.params, "delay_points"));
                 return cross_kerr_ramsey(c.device, o);
               }});

  r.push_back({"sideband_spectroscopy",
               "Pump frequency versus power map following the Stark-shifted resonance",
               {{"qubit", "1", "driven qubit (1 or 2)"},
                {"omega_mhz", "5", "sideband rate"},
                {"stark_qubit_mhz", "-2", "qubit shift per unit power"},
                {"stark_bus_mhz", "-1", "bus shift per unit power"},
                {"power_max", "4", "largest drive power"},
                {"power_points", "9", "number of powers"},
                {"offset_span_mhz", "3", "pump offsets cover +-span"},
                {"offset_points", "61", "number of pump offsets"}},
               false,
               [](const RunContext& c) {
                 SpectroscopyOptions o;
                 o.qubit = static_cast<int>(c.params.integer("qubit"));
                 o.omega = AngularFrequency::mhz(c.params.number("omega_mhz"));
                 o.stark = {AngularFrequency::mhz(c.params.number("stark_qubit_mhz")),
                            AngularFrequency::mhz(c.params.number("stark_bus_mhz"))};
                 o.powers = linear_grid(0.0, c.params.number("power_max"),
                                        static_cast<std::size_t>(points(c.params, "power_points")));
                 const double span = c.params.number("offset_span_mhz");
                 o.pump_offsets = mhz_grid(-span, span, points(c.params, "offset_points"));
                 return sideband_spectroscopy(c.device, o);
               }});
  return r;
}

}  // namespace

ScenarioParams::ScenarioParams(const ScenarioSpec& spec, const Config& cfg) : scenario_(spec.name) {
  for (const auto& p : spec.params) values_[p.key] = p.default_value;
  const auto it = cfg.sections().find(scenario_section);
  if (it == cfg.sections().end()) return;
  for (const auto& [key, value] : it->second) {
    if (key == "name" || key == "seed") continue;
    if (!values_.count(key)) throw ConfigError("scenario '" + spec.name + "' has no parameter '" + key + "'");
    values_[key] = value;
  }
}

const std::string& ScenarioParams::raw(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("scenario '" + scenario_ + "' does not declare '" + key + "'");
  return it->second;
}

double ScenarioParams::number(const std::string& key) const {
  const std::string& v = raw(key);
  if (v.empty()) throw ConfigError("scenario." + key + " is required");
  return parse_number(v, "scenario." + key);
}

long ScenarioParams::integer(const std::string& key) const { return parse_integer(raw(key), "scenario." + key); }
bool ScenarioParams::flag(const std::string& key) const { return parse_bool(raw(key), "scenario." + key); }
std::string ScenarioParams::text(const std::string& key) const { return raw(key); }

std::optional<double> ScenarioParams::optional_number(const std::string& key) const {
  const std::string& v = raw(key);
  if (v.empty()) return std::nullopt;
  return parse_number(v, "scenario." + key);
}

const std::vector<ScenarioSpec>& scenario_registry() {
  static const std::vector<ScenarioSpec> registry = build_registry();
  return registry;
}

const ScenarioSpec* find_scenario(const std::string& name) {
  const auto& r = scenario_registry();
  const auto it = std::find_if(r.begin(), r.end(), [&](const ScenarioSpec& s) { return s.name == name; });
  return it == r.end() ? nullptr : &*it;
}

}  // namespace qnet::app
