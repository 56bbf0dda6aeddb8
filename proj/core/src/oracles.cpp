#include "qnet/protocols/oracles.hpp"

#include <vector>

#include "qnet/protocols/resonant.hpp"
#include "qnet/protocols/simulation.hpp"
#include "qnet/util/errors.hpp"

namespace qnet {

PopulationOracle simulated_raman_oracle(const NetworkModel& model, const HiddenDriveError& error) {
  model.validate();
  return [model, error](const DriveConfig& commanded, std::span<const double> times) {
    DriveConfig actual = commanded;
    actual.detuning = commanded.detuning + error.bus_detuning;
    actual.omega1 = commanded.omega1 * error.omega1_scale;
    actual.omega2 = commanded.omega2 * error.omega2_scale;
    std::vector<double> grid{0.0};
    grid.insert(grid.end(), times.begin(), times.end());
    const Trajectory traj = simulate_raman(model, actual, excited_state(model, 1), grid);
    const NetworkObservables obs(model.space());
    const std::vector<double> p1 = traj.observe(obs.n1), p2 = traj.observe(obs.n2);
    return PopulationRecord{{p1.begin() + 1, p1.end()}, {p2.begin() + 1, p2.end()}};
  };
}

TrainOracle simulated_train_oracle(const NetworkModel& model, AngularFrequency omega, int n_gates) {
  if (n_gates < 4) throw InvalidArgument("simulated_train_oracle: need at least four gates");
  return [model, omega, n_gates](const PulseShape& pulse) { return simulate_gate_train(model, omega, pulse, n_gates); };
}

ResidualOracle simulated_dual_rail_residual(const NetworkModel& model, const DriveConfig& drive) {
  const TimeDependentHamiltonian H = build_raman_hamiltonian(model, drive);
  if (!H.is_static()) throw InvalidArgument("simulated_dual_rail_residual: expects a rectangular drive");
  const Operator h = H.static_part();
  const std::vector<Operator> collapse = collapse_operators(model);
  const DensityMatrix rho0 = excited_state(model, 1);
  return [h, collapse, rho0](double duration) {
    return static_channel(h, collapse, duration).apply(rho0).population({1, 0, 0});
  };
}

}  // namespace qnet
