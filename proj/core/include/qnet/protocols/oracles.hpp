#pragma once

#include "qnet/model/network.hpp"
#include "qnet/tuneup/calibration.hpp"

namespace qnet {

/// Drive errors hidden from the calibration routines.
struct HiddenDriveError {
  AngularFrequency bus_detuning;
  double omega1_scale = 1.0;
  double omega2_scale = 1.0;
};

/// Simulated hardware: the commanded drive is distorted by `error` before the
/// network is evolved from |e g 0>.
PopulationOracle simulated_raman_oracle(const NetworkModel& model, const HiddenDriveError& error);

/// Gate-train populations of shaped resonant Raman swaps.
TrainOracle simulated_train_oracle(const NetworkModel& model, AngularFrequency omega, int n_gates);

/// Residual |eg> population (|0>_L) after a rectangular dual-rail pulse.
ResidualOracle simulated_dual_rail_residual(const NetworkModel& model, const DriveConfig& drive);

}  // namespace qnet
