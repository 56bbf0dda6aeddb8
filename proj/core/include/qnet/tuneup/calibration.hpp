#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qnet/model/network.hpp"
#include "qnet/tuneup/pulse_shape.hpp"

namespace qnet {

struct PopulationRecord {
  std::vector<double> p_q1;
  std::vector<double> p_q2;
};

/// Excited-state populations of both qubits measured at `times` after the
/// drive is switched on from |eg0>.
using PopulationOracle = std::function<PopulationRecord(const DriveConfig&, std::span<const double> times)>;

struct RateMatchOptions {
  int checkpoints = 4;
  int max_iterations = 60;
  double threshold = 1e-5;
  AngularFrequency detuning_step = AngularFrequency::mhz(0.2);
  double amplitude_step_fraction = 0.02;
  /// Stop once every step has shrunk by this factor.
  double min_step_fraction = 1e-3;
};

struct RateMatchLogEntry {
  int iteration = 0;
  double detuning_mhz = 0.0;
  double relative_detuning_mhz = 0.0;
  double omega1_mhz = 0.0;
  double omega2_mhz = 0.0;
  double rms_error = 0.0;
};

struct RateMatchResult {
  DriveConfig drive;
  std::vector<RateMatchLogEntry> log;
  double initial_rms = 0.0;
  double final_rms = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Coordinate descent with step halving on (Delta, delta, Omega1, Omega2),
/// minimising the RMS mismatch between oracle populations and the model
/// prediction for the nominal drive at t = k tau_SWAP, k = 1..K. A trial is
/// accepted only if it strictly lowers the error.
RateMatchResult match_raman_rates(const NetworkModel& model, const DriveConfig& initial, const PopulationOracle& oracle,
                                  const RateMatchOptions& options = {});

/// Target-state populations after k = 0..n gates built from `pulse`.
using TrainOracle = std::function<std::vector<double>(const PulseShape& pulse)>;

struct GateTimeCandidate {
  double effective_s = 0.0;
  double residual_rms = 0.0;
  double loss_per_gate = 0.0;
};

struct GateTimeResult {
  double best_effective_s = 0.0;
  std::vector<GateTimeCandidate> candidates;
};

/// Scores each candidate t_eff by the residual of the gate-train data from a
/// pure exponential; padding and sigma are taken from the template.
GateTimeResult rank_gate_times(const PulseShape& pulse_template, const TrainOracle& oracle,
                               std::span<const double> candidates);

/// Grid scan over [t_min, t_max] plus parabolic refinement. Throws
/// CalibrationError when the best grid point sits on the range boundary.
GateTimeResult optimize_effective_gate_time(const PulseShape& pulse_template, const TrainOracle& oracle, double t_min,
                                            double t_max, int n_grid = 21);

/// Residual |0>_L population after a pulse of the given duration.
using ResidualOracle = std::function<double(double duration)>;

struct PiCalibrationOptions {
  double window_fraction = 0.10;
  int points = 11;
  /// Centre of the scan; defaults to pi / Omega_R.
  std::optional<double> predicted_pi;
};

struct PiCalibration {
  double pi_duration = 0.0;
  double half_pi_duration = 0.0;
  double predicted_pi = 0.0;
  Eigen::Vector3d coefficients = Eigen::Vector3d::Zero();
  std::vector<double> durations;
  std::vector<double> residuals;
  bool vertex_in_window = false;
};

PiCalibration calibrate_dual_rail_pi(const NetworkModel& model, const DriveConfig& drive, const ResidualOracle& oracle,
                                     const PiCalibrationOptions& options = {});

}  // namespace qnet
