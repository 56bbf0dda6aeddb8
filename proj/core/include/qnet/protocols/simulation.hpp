#pragma once

#include <span>
#include <vector>

#include "qnet/model/hamiltonians.hpp"
#include "qnet/model/network.hpp"
#include "qnet/quantum/lindblad.hpp"
#include "qnet/quantum/propagator.hpp"

namespace qnet {

inline constexpr double truncation_bound = 1e-3;

/// Observables shared by the network scenarios.
struct NetworkObservables {
  explicit NetworkObservables(const HilbertSpace& space);

  Operator n1;
  Operator n2;
  Operator nb;
  /// |g g 0><g g 0|, the state left after the excitation is lost.
  Operator vacuum;
  /// Projector on the highest bus Fock level.
  Operator bus_top;
};

/// Single excitation in qubit 1 or 2, everything else in the ground state.
DensityMatrix excited_state(const NetworkModel& model, int qubit_index);

/// Throws TruncationError when the highest bus level holds more than
/// truncation_bound at any state. Returns the largest population seen.
double check_truncation(std::span<const DensityMatrix> states);

/// Raman evolution of the network. Drives without envelopes take the exact
/// static propagator, shaped drives the adaptive integrator.
Trajectory simulate_raman(const NetworkModel& model, const DriveConfig& drive, const DensityMatrix& rho0,
                          std::span<const double> times);

/// Final state after a time-dependent or static segment of given duration.
DensityMatrix evolve_segment(const TimeDependentHamiltonian& H, const std::vector<Operator>& collapse,
                             const DensityMatrix& rho0, double duration);

/// exp(L k dt) for k = 0..n, built by repeated multiplication.
std::vector<Channel> channel_powers(const Operator& H, const std::vector<Operator>& collapse, double dt,
                                    std::size_t n);

/// Equally spaced grid of n points on [start, stop].
std::vector<double> linear_grid(double start, double stop, std::size_t n);

}  // namespace qnet
