#pragma once

#include "qnet/quantum/hilbert.hpp"
#include "qnet/util/units.hpp"

namespace qnet {

/// Junction and pump parameters of the four-wave-mixing sideband. Pump
/// amplitudes are complex (phase at t = 0) and in rad/s like the frequencies.
struct JunctionParams {
  AngularFrequency josephson_energy;
  double phi_a = 0.0;
  double phi_b = 0.0;
  cplx eps1;
  cplx eps2;
  AngularFrequency pump1;
  AngularFrequency pump2;
  AngularFrequency qubit_frequency;
  AngularFrequency bus_frequency;

  void validate() const;
  /// xi_i = eps_i / (omega_a - omega_i)
  cplx xi1() const;
  cplx xi2() const;
};

enum class PumpMatching { Degenerate, Nondegenerate };

/// Omega = 2 E_J phi_a^2 phi_b^2 |S|, where S sums the swap-coefficient terms
/// that survive the rotating-wave approximation for the chosen matching.
/// Degenerate (omega_1 + omega_2 = |omega_a - omega_b|): all four terms.
/// Nondegenerate (omega_2 - omega_1 = |omega_a - omega_b|): the two cross terms.
AngularFrequency sideband_rate_from_pumps(const JunctionParams& j, PumpMatching matching, double rel_tol = 1e-6);

}  // namespace qnet
