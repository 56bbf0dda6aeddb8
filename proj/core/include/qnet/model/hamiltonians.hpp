#pragma once

#include <functional>
#include <optional>

#include "qnet/model/network.hpp"
#include "qnet/quantum/lindblad.hpp"

namespace qnet {

/// Frame in which the sideband detuning appears. Rotating: (Omega/2)(e^{i Delta t} a^dag b + h.c.).
/// Static: -Delta b^dag b + (Omega/2)(a^dag b + h.c.). Populations agree.
enum class SidebandFrame { Rotating, Static };

struct SidebandOptions {
  SidebandFrame frame = SidebandFrame::Rotating;
  double phase = 0.0;
  std::optional<PulseShape> envelope;
};

TimeDependentHamiltonian build_sideband_hamiltonian(const NetworkModel& network, int qubit_index,
                                                    AngularFrequency omega, AngularFrequency detuning,
                                                    const SidebandOptions& options = {});

/// H = Delta b^dag b + delta a2^dag a2 + sum_i (Omega_i/2) f_i(t) (e^{i phi_i} a_i^dag b + h.c.).
TimeDependentHamiltonian build_raman_hamiltonian(const NetworkModel& network, const DriveConfig& drive);

/// Static -chi n_i n_j terms of the network (zero operator when disabled).
Operator cross_kerr_terms(const NetworkModel& network);

/// Pump frequency satisfying the degenerate four-wave-mixing condition |omega_b - omega_a| / 2.
AngularFrequency frequency_matching(const NetworkModel& network, int qubit_index);

struct DualRailEffective {
  /// Omega_R = Omega1 Omega2 (2 Delta - delta) / (2 Delta (Delta - delta)).
  AngularFrequency omega_r;
  /// 2x2 generator on {|eg>, |ge>} in the frame of build_raman_hamiltonian.
  Matrix hamiltonian;
  /// Dressed first-order Hamiltonian in the frame Delta n1 + (Delta - delta) n2, including -b^dag b.
  Operator dressed;
  /// Set when Delta/Omega < 3, where the perturbative form is unreliable.
  bool perturbative_warning = false;
};

DualRailEffective effective_dual_rail(const NetworkModel& network, const DriveConfig& drive);

/// Splitting between the two qubit-like eigenstates of the single-excitation
/// exchange block. Sets the exact dual-rail swap rate; pi duration = pi / splitting.
AngularFrequency exact_exchange_splitting(const DriveConfig& drive);

/// Signed shift per unit of drive power: omega(P) = omega + slope * P.
struct StarkModel {
  AngularFrequency slope_qubit;
  AngularFrequency slope_bus;
};

/// Matching frequency after Stark shifts, given the signed half gap (omega_b - omega_a)/2.
AngularFrequency stark_shifted_resonance(const StarkModel& stark, AngularFrequency half_gap, double power);
AngularFrequency stark_shifted_resonance(const StarkModel& stark, const NetworkModel& network, int qubit_index,
                                         double power);

}  // namespace qnet
