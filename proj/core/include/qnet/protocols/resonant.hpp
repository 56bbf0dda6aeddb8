#pragma once

#include <optional>
#include <vector>

#include "qnet/analysis/swap_fit.hpp"
#include "qnet/model/network.hpp"
#include "qnet/protocols/scenario.hpp"
#include "qnet/tuneup/calibration.hpp"
#include "qnet/tuneup/pulse_shape.hpp"
#include "qnet/util/units.hpp"

namespace qnet {

/// Edge width and padding shared by all shaped pulses: T = t_eff + 10 sigma.
inline constexpr double default_sigma_s = 4 * ns;
inline constexpr double default_padding_s = 10 * default_sigma_s;

// ---- Swap efficiency -------------------------------------------------------

struct SwapEfficiencyOptions {
  AngularFrequency omega = AngularFrequency::mhz(5.0);
  int n_max = 10;
  bool include_qubit_loss = true;
  /// Replaces T1, T2R and T2E of both qubits (an idealised qubit).
  std::optional<double> qubit_coherence_s;
  /// Overrides the bus lifetime through Q_b = omega_b tau_b.
  std::optional<double> bus_quality_factor;
};

struct SwapEfficiencyPoint {
  int n = 1;
  AngularFrequency detuning;
  double tau_swap_s = 0.0;
  double inefficiency = 0.0;
};

/// 1 - P_q2(tau_SWAP) for the beam-splitter schedules N = 1..n_max.
std::vector<SwapEfficiencyPoint> swap_efficiency_points(const NetworkModel& model, const SwapEfficiencyOptions& options);
ScenarioResult swap_efficiency_sweep(const NetworkModel& model, const SwapEfficiencyOptions& options = {});

// ---- Single sideband -------------------------------------------------------

struct ChevronOptions {
  int qubit = 1;
  AngularFrequency omega = AngularFrequency::mhz(5.0);
  /// Sideband detunings; empty selects -10..10 MHz in 41 steps.
  std::vector<AngularFrequency> detunings;
  /// Empty selects 0..4 us in 801 steps.
  std::vector<double> times;
};

ScenarioResult sideband_chevron(const NetworkModel& model, const ChevronOptions& options = {});

struct BusLifetimeOptions {
  AngularFrequency omega = AngularFrequency::mhz(5.0);
  /// Hold times after the swap-in; empty selects 0..20 us in 41 steps.
  std::vector<double> holds;
};

/// Swap-in, hold, swap-out, exponential fit of the returned population.
ScenarioResult measure_bus_lifetime(const NetworkModel& model, const BusLifetimeOptions& options = {});

// ---- Resonant Raman --------------------------------------------------------

struct ResonantRamanResult {
  ScenarioResult result;
  std::optional<SwapFit> fit;
};

/// Continuous resonant Raman drive from |e g 0>. Empty times select 0..10 us
/// in 2001 steps.
ResonantRamanResult resonant_raman(const NetworkModel& model, const DriveConfig& drive,
                                   std::vector<double> times = {});

/// Population sitting where an ideal train of full swaps puts the excitation
/// (q1 after even, q2 after odd gate counts), for k = 0..n_gates.
std::vector<double> simulate_gate_train(const NetworkModel& model, AngularFrequency omega, const PulseShape& pulse,
                                        int n_gates);

struct SwapTrainOptions {
  AngularFrequency omega = AngularFrequency::mhz(5.0);
  PulseShape pulse = PulseShape::padded(142 * ns, default_sigma_s, default_padding_s);
  int n_gates = 20;
};

ScenarioResult pulsed_swap_train(const NetworkModel& model, const SwapTrainOptions& options = {});

struct GateTimeOptions {
  AngularFrequency omega = AngularFrequency::mhz(5.0);
  double t_min_s = 130 * ns;
  double t_max_s = 155 * ns;
  int n_grid = 21;
  int n_gates = 20;
};

ScenarioResult gate_time_optimization(const NetworkModel& model, const GateTimeOptions& options = {});

// ---- Stroboscopic Bell state ------------------------------------------------

struct BellOptions {
  AngularFrequency omega = AngularFrequency::mhz(5.0);
  bool shaped = true;
  double sigma_s = default_sigma_s;
  double padding_s = default_padding_s;
  /// Refine t_eff on a simulated sideband pi-pulse train before the sequence.
  bool calibrate = false;
  int n_phases = 73;
};

/// q1-bus half swap followed by a bus-q2 full swap, then two-qubit analysis.
ScenarioResult stroboscopic_bell(const NetworkModel& model, const BellOptions& options = {});

// ---- Raman rate matching ---------------------------------------------------

struct RateMatchScenarioOptions {
  AngularFrequency omega = AngularFrequency::mhz(5.04);
  /// Hidden errors of the simulated hardware.
  AngularFrequency hidden_bus_detuning = AngularFrequency::mhz(0.36);
  double hidden_omega2_scale = 0.97;
  RateMatchOptions match;
};

ScenarioResult raman_rate_matching(const NetworkModel& model, const RateMatchScenarioOptions& options = {});

}  // namespace qnet
