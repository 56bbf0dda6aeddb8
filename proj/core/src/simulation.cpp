#include "qnet/protocols/simulation.hpp"

#include <algorithm>
#include <string>

#include "qnet/util/errors.hpp"

namespace qnet {

NetworkObservables::NetworkObservables(const HilbertSpace& space)
    : n1(number(space, "q1")),
      n2(number(space, "q2")),
      nb(number(space, bus_label)),
      vacuum(level_projector(space, "q1", 0) * level_projector(space, "q2", 0) *
             level_projector(space, bus_label, 0)),
      bus_top(level_projector(space, bus_label, space.mode_dim(space.mode_index(bus_label)) - 1)) {}

DensityMatrix excited_state(const NetworkModel& model, int qubit_index) {
  if (qubit_index != 1 && qubit_index != 2) throw InvalidArgument("qubit index must be 1 or 2");
  return DensityMatrix::basis(model.space(), {qubit_index == 1 ? 1 : 0, qubit_index == 2 ? 1 : 0, 0});
}

double check_truncation(std::span<const DensityMatrix> states) {
  if (states.empty()) return 0.0;
  const HilbertSpace& space = states.front().space();
  const int top = space.mode_dim(space.mode_index(bus_label)) - 1;
  double worst = 0.0;
  for (const auto& rho : states) {
    double p = 0.0;
    for (std::size_t i = 0; i < space.dimension(); ++i)
      if (space.levels_of(i).back() == top) p += rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
    worst = std::max(worst, p);
  }
  if (worst >= truncation_bound)
    throw TruncationError("highest bus level population " + std::to_string(worst) + " exceeds the truncation bound",
                          worst);
  return worst;
}

Trajectory simulate_raman(const NetworkModel& model, const DriveConfig& drive, const DensityMatrix& rho0,
                          std::span<const double> times) {
  const TimeDependentHamiltonian H = build_raman_hamiltonian(model, drive);
  const std::vector<Operator> collapse = collapse_operators(model);
  Trajectory traj = H.is_static() ? evolve_static(H.static_part(), collapse, rho0, times)
                                  : evolve_lindblad(H, collapse, rho0, times);
  check_truncation(traj.states);
  return traj;
}

DensityMatrix evolve_segment(const TimeDependentHamiltonian& H, const std::vector<Operator>& collapse,
                             const DensityMatrix& rho0, double duration) {
  if (duration < 0.0) throw InvalidArgument("evolve_segment: negative duration");
  if (duration == 0.0) return rho0;
  if (H.is_static()) return static_channel(H.static_part(), collapse, duration).apply(rho0);
  return evolve_to(H, collapse, rho0, 0.0, duration);
}

std::vector<Channel> channel_powers(const Operator& H, const std::vector<Operator>& collapse, double dt,
                                    std::size_t n) {
  std::vector<Channel> out;
  out.reserve(n + 1);
  out.push_back(Channel::identity(H.space()));
  if (n == 0) return out;
  const Channel step = static_channel(H, collapse, dt);
  for (std::size_t k = 1; k <= n; ++k) out.push_back(out.back().then(step));
  return out;
}

std::vector<double> linear_grid(double start, double stop, std::size_t n) {
  if (n < 2) throw InvalidArgument("linear_grid: need at least two points");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

}  // namespace qnet
