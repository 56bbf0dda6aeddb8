#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qnet/quantum/hilbert.hpp"

namespace qnet {

using Envelope = std::function<cplx(double)>;

struct DriveTerm {
  Operator op;
  Envelope envelope;
};

/// H(t) = static + sum_i envelope_i(t) * term_i, angular units (rad/s).
class TimeDependentHamiltonian {
 public:
  explicit TimeDependentHamiltonian(Operator static_part, std::vector<DriveTerm> terms = {});

  const HilbertSpace& space() const { return static_part_.space(); }
  const Operator& static_part() const { return static_part_; }
  const std::vector<DriveTerm>& terms() const { return terms_; }
  bool is_static() const { return terms_.empty(); }

  Matrix at(double t) const;
  /// Throws InvalidArgument when H(t) is not Hermitian at any of the times.
  void check_hermitian(std::span<const double> times, double rel_tol = 1e-12) const;

 private:
  Operator static_part_;
  std::vector<DriveTerm> terms_;
};

struct SolverOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  /// Largest allowed step in seconds; 0 selects span/50 so that drive
  /// features cannot be stepped over while the state is idle.
  double max_step = 0.0;
  std::size_t max_steps = 20'000'000;
};

struct SolverStats {
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  SolverStats stats;

  const DensityMatrix& final_state() const { return states.back(); }
  /// Real expectation value of a Hermitian observable at every output time.
  std::vector<double> observe(const Operator& obs) const;
};

/// Integrates d rho/dt = -i[H(t), rho] + sum_k D[L_k] rho with an adaptive
/// Dormand-Prince 5(4) scheme. Output times must be increasing; the first
/// output time is the initial time.
Trajectory evolve_lindblad(const TimeDependentHamiltonian& H, const std::vector<Operator>& collapse_ops,
                           const DensityMatrix& rho0, std::span<const double> times,
                           const SolverOptions& options = {});

/// Convenience for a single final state at t_end, starting from t0.
DensityMatrix evolve_to(const TimeDependentHamiltonian& H, const std::vector<Operator>& collapse_ops,
                        const DensityMatrix& rho0, double t0, double t_end, const SolverOptions& options = {});

}  // namespace qnet
