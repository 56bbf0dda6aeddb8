#pragma once

#include "qnet/util/units.hpp"

namespace qnet {

/// Full-swap schedule built from N beam-splitter operations of angle pi/(2N).
struct BeamSplitterPlan {
  AngularFrequency omega;
  int n = 1;
  AngularFrequency detuning;
  double theta = 0.0;
  double tau_bs = 0.0;
  double tau_swap = 0.0;
};

/// theta = (pi/2)(1 - Delta / sqrt(2 Omega^2 + Delta^2))
double beam_splitter_angle(AngularFrequency omega, AngularFrequency detuning);
/// tau_BS = 2 pi / sqrt(2 Omega^2 + Delta^2), the spacing of bus-empty instants.
double beam_splitter_time(AngularFrequency omega, AngularFrequency detuning);

/// Unique Delta >= 0 with theta = pi/(2N), and tau_SWAP = N tau_BS.
BeamSplitterPlan plan_beam_splitter(AngularFrequency omega, int n);

}  // namespace qnet
