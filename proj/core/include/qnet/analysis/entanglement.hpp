#pragma once

#include <span>
#include <vector>

#include "qnet/quantum/hilbert.hpp"

namespace qnet {

/// Two-qubit states use the basis |q1 q2> ordered gg, ge, eg, ee.
namespace two_qubit {
inline constexpr int gg = 0;
inline constexpr int ge = 1;
inline constexpr int eg = 2;
inline constexpr int ee = 3;
}  // namespace two_qubit

/// Reduced q1-q2 state of a network state (bus traced out).
DensityMatrix qubit_pair_state(const DensityMatrix& network_state);

/// Wootters concurrence via the spin-flipped eigenvalue construction.
double concurrence(const DensityMatrix& rho);

struct XXCurve {
  std::vector<double> phases;
  std::vector<double> values;
  double amplitude = 0.0;
  double phase = 0.0;
};

/// <X (x) X_phi> with X_phi = cos(phi) X + sin(phi) Y.
XXCurve xx_correlator(const DensityMatrix& rho, std::span<const double> phases);

/// Fidelity to (|eg> + e^{i chi}|ge>)/sqrt2 maximised over chi:
/// (rho_eg,eg + rho_ge,ge)/2 + |rho_eg,ge|.
double bell_fidelity(const DensityMatrix& rho);

}  // namespace qnet
