#pragma once

#include <span>

namespace qnet {

struct GateTrainFit {
  /// Per-gate survival r in A r^k.
  double survival = 1.0;
  double loss_per_gate = 0.0;
  double loss_stderr = 0.0;
  double amplitude = 0.0;
  /// RMS deviation of the data from the fitted pure exponential; large
  /// values indicate coherent (oscillatory) error.
  double residual_rms = 0.0;
};

/// Fits target-state populations after k gates to A r^k. Needs >= 5 points;
/// throws FitError for data that grows with k.
GateTrainFit fit_gate_train(std::span<const double> gate_counts, std::span<const double> populations);

}  // namespace qnet
