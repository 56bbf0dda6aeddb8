#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qnet/analysis/readout.hpp"
#include "qnet/model/hamiltonians.hpp"
#include "qnet/model/network.hpp"
#include "qnet/protocols/scenario.hpp"
#include "qnet/util/units.hpp"

namespace qnet {

/// Drive of the detuned regime used throughout: Omega = 6.6 MHz, Delta = 31.43 MHz.
DriveConfig detuned_reference_drive();

struct DetunedChevronOptions {
  DriveConfig drive = detuned_reference_drive();
  /// Relative detunings; empty selects -2..2 MHz in 21 steps.
  std::vector<AngularFrequency> deltas;
  /// Empty selects 0..3 us in 1501 steps.
  std::vector<double> times;
};

/// Population map over (delta, t); the delta = 0 linecut is fitted and the
/// traced two-qubit state is evaluated at its half-swap time.
ScenarioResult detuned_chevron(const NetworkModel& model, const DetunedChevronOptions& options = {});

/// Full dual-rail swap duration pi / s from the exact single-excitation splitting.
double dual_rail_pi_duration(const DriveConfig& drive);

enum class DualRailKind { T1, Ramsey, Echo };

const char* to_string(DualRailKind kind);

struct DualRailOptions {
  DualRailKind kind = DualRailKind::T1;
  DriveConfig drive = detuned_reference_drive();
  /// Relative phase rate of the idle frame.
  AngularFrequency frame_detuning = AngularFrequency::mhz(31.43);
  /// Empty selects a kind-specific grid.
  std::vector<double> delays;
  long shots = 2000;
  std::uint64_t seed = 1234;
  /// Parametric resamples of the recorded shots for the fit uncertainty; 0 disables.
  int bootstrap_resamples = 200;
  ReadoutModel readout = ReadoutModel::reference_device();
  /// Overrides the pi duration; defaults to dual_rail_pi_duration(drive).
  std::optional<double> pi_duration_s;
};

/// Logical T1, Ramsey or echo sequence with sampled readout, correction and
/// gg post-selection.
ScenarioResult dual_rail_experiment(const NetworkModel& model, const DualRailOptions& options = {});

struct PiCalibrationScenarioOptions {
  DriveConfig drive = detuned_reference_drive();
  /// Centre of the scan; defaults to dual_rail_pi_duration(drive).
  std::optional<double> predicted_pi_s;
};

ScenarioResult dual_rail_pi_calibration(const NetworkModel& model, const PiCalibrationScenarioOptions& options = {});

struct CrossKerrOptions {
  AngularFrequency artificial_detuning = AngularFrequency::mhz(0.5);
  /// Empty selects 0..8 us in 801 steps.
  std::vector<double> delays;
};

/// Ramsey fringes on qubit 1 with qubit 2 in g or e; chi from the initial conditional phase rate.
ScenarioResult cross_kerr_ramsey(const NetworkModel& model, const CrossKerrOptions& options = {});

struct SpectroscopyOptions {
  int qubit = 1;
  AngularFrequency omega = AngularFrequency::mhz(5.0);
  StarkModel stark{AngularFrequency::mhz(-2.0), AngularFrequency::mhz(-1.0)};
  /// Drive powers; empty selects 0..4 in 9 steps.
  std::vector<double> powers;
  /// Pump frequency offsets from the unshifted matching frequency; empty selects -3..3 MHz in 61 steps.
  std::vector<AngularFrequency> pump_offsets;
};

/// Pump-frequency versus power map of the residual qubit population after a
/// sideband pi pulse. The resonance follows the Stark-shifted matching condition.
ScenarioResult sideband_spectroscopy(const NetworkModel& model, const SpectroscopyOptions& options = {});

}  // namespace qnet
