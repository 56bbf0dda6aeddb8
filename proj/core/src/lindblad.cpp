#include "qnet/quantum/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qnet/util/errors.hpp"

namespace qnet {

TimeDependentHamiltonian::TimeDependentHamiltonian(Operator static_part, std::vector<DriveTerm> terms)
    : static_part_(std::move(static_part)), terms_(std::move(terms)) {
  for (const auto& term : terms_) {
    if (!(term.op.space() == static_part_.space()))
      throw InvalidArgument("TimeDependentHamiltonian: drive term on a different space");
    if (!term.envelope) throw InvalidArgument("TimeDependentHamiltonian: empty envelope");
  }
}

Matrix TimeDependentHamiltonian::at(double t) const {
  Matrix h = static_part_.matrix();
  for (const auto& term : terms_) {
    const cplx f = term.envelope(t);
    if (f != cplx(0.0, 0.0)) h += f * term.op.matrix();
  }
  return h;
}

void TimeDependentHamiltonian::check_hermitian(std::span<const double> times, double rel_tol) const {
  for (double t : times) {
    const Matrix h = at(t);
    const double scale = std::max(h.norm(), 1.0);
    if ((h - h.adjoint()).norm() > rel_tol * scale)
      throw InvalidArgument("Hamiltonian is not Hermitian at t = " + std::to_string(t) + " s");
  }
}

std::vector<double> Trajectory::observe(const Operator& obs) const {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& rho : states) out.push_back((rho.matrix() * obs.matrix()).trace().real());
  return out;
}

namespace {

struct LindbladRhs {
  const TimeDependentHamiltonian& H;
  std::vector<Matrix> jumps;
  std::vector<Matrix> jumps_dag;
  Matrix half_k;

  LindbladRhs(const TimeDependentHamiltonian& h, const std::vector<Operator>& collapse) : H(h) {
    const auto n = static_cast<Eigen::Index>(h.space().dimension());
    half_k = Matrix::Zero(n, n);
    for (const auto& L : collapse) {
      if (!(L.space() == h.space())) throw InvalidArgument("collapse operator on a different space");
      jumps.push_back(L.matrix());
      jumps_dag.push_back(L.matrix().adjoint());
      half_k += 0.5 * jumps_dag.back() * jumps.back();
    }
  }

  void operator()(double t, const Matrix& rho, Matrix& out) const {
    // -i(H_eff rho - rho H_eff^dag) with H_eff = H - iK/2
    const Matrix heff = H.at(t) - cplx(0.0, 1.0) * half_k;
    const Matrix a = heff * rho;
    out.noalias() = cplx(0.0, -1.0) * a + cplx(0.0, 1.0) * a.adjoint();
    for (std::size_t k = 0; k < jumps.size(); ++k) out.noalias() += jumps[k] * rho * jumps_dag[k];
  }
};

double error_norm(const Matrix& err, const Matrix& y0, const Matrix& y1, double rtol, double atol) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < err.cols(); ++j)
    for (Eigen::Index i = 0; i < err.rows(); ++i) {
      const double scale = atol + rtol * std::max(std::abs(y0(i, j)), std::abs(y1(i, j)));
      worst = std::max(worst, std::abs(err(i, j)) / scale);
    }
  return worst;
}

}  // namespace

Trajectory evolve_lindblad(const TimeDependentHamiltonian& H, const std::vector<Operator>& collapse_ops,
                           const DensityMatrix& rho0, std::span<const double> times, const SolverOptions& options) {
  if (times.empty()) throw InvalidArgument("evolve_lindblad: empty time grid");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw InvalidArgument("evolve_lindblad: times must be strictly increasing");
  if (!(rho0.space() == H.space())) throw InvalidArgument("evolve_lindblad: initial state on a different space");
  {
    // Validate the initial state through the checked constructor.
    DensityMatrix check(rho0.space(), rho0.matrix());
  }

  const double t0 = times.front();
  const double t_end = times.back();
  const double span = t_end - t0;
  {
    std::vector<double> probe;
    const int n_probe = H.is_static() ? 1 : 20;
    for (int i = 0; i < n_probe; ++i) probe.push_back(t0 + span * i / std::max(1, n_probe - 1));
    H.check_hermitian(probe);
  }

  LindbladRhs rhs(H, collapse_ops);
  const HilbertSpace& space = H.space();

  Trajectory traj;
  traj.times.assign(times.begin(), times.end());
  traj.states.reserve(times.size());

  auto record = [&](const Matrix& rho) {
    const StateDiagnostics d = diagnose(rho);
    traj.stats.max_trace_error = std::max(traj.stats.max_trace_error, d.trace_error);
    traj.stats.max_hermiticity_error = std::max(traj.stats.max_hermiticity_error, d.hermiticity_error);
    traj.stats.min_eigenvalue = std::min(traj.stats.min_eigenvalue, d.min_eigenvalue);
    if (d.trace_error > DensityMatrix::trace_tol)
      throw IntegrationError("evolve_lindblad: trace drifted beyond tolerance", d.trace_error);
    traj.states.push_back(DensityMatrix::unchecked(space, rho));
  };

  Matrix y = rho0.matrix();
  record(y);
  if (times.size() == 1) return traj;

  const double h_max = options.max_step > 0.0 ? options.max_step : span / 50.0;

  // Dormand-Prince 5(4) tableau.
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;

  const auto n = y.rows();
  Matrix k1(n, n), k2(n, n), k3(n, n), k4(n, n), k5(n, n), k6(n, n), k7(n, n), tmp(n, n), y_new(n, n), err(n, n);

  double t = t0;
  rhs(t, y, k1);

  // Initial step from the scaled derivative magnitude.
  double h;
  {
    const double d0 = y.cwiseAbs().maxCoeff();
    const double d1 = k1.cwiseAbs().maxCoeff();
    h = (d1 > 1e-300) ? 0.01 * std::max(d0, options.atol) / d1 : 1e-3 * span;
    h = std::clamp(h, 1e-6 * span, h_max);
  }

  std::size_t next_out = 1;
  std::size_t steps = 0;
  double last_err = 0.0;
  while (next_out < times.size()) {
    if (++steps > options.max_steps)
      throw IntegrationError("evolve_lindblad: step budget exhausted", last_err);
    const double target = times[next_out];
    bool hits_output = false;
    double h_try = std::min(h, h_max);
    if (t + h_try >= target - 1e-15 * std::abs(target)) {
      h_try = target - t;
      hits_output = true;
    }

    tmp = y + h_try * a21 * k1;
    rhs(t + c2 * h_try, tmp, k2);
    tmp = y + h_try * (a31 * k1 + a32 * k2);
    rhs(t + c3 * h_try, tmp, k3);
    tmp = y + h_try * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(t + c4 * h_try, tmp, k4);
    tmp = y + h_try * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(t + c5 * h_try, tmp, k5);
    tmp = y + h_try * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(t + h_try, tmp, k6);
    y_new = y + h_try * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    rhs(t + h_try, y_new, k7);
    err = h_try * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double en = error_norm(err, y, y_new, options.rtol, options.atol);
    last_err = en;
    if (!std::isfinite(en)) throw IntegrationError("evolve_lindblad: non-finite state", en);

    if (en <= 1.0) {
      t = hits_output ? target : t + h_try;
      y = y_new;
      k1 = k7;
      ++traj.stats.accepted_steps;
      const double factor = en > 0.0 ? std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0) : 5.0;
      // A step shortened to land on an output time should not shrink the
      // proposal for the next interval.
      h = hits_output ? std::max(h, h_try * factor) : h_try * factor;
      if (hits_output) {
        record(y);
        ++next_out;
      }
    } else {
      ++traj.stats.rejected_steps;
      h = h_try * std::clamp(0.9 * std::pow(en, -0.2), 0.1, 0.9);
      if (h < 1e-13 * std::max(std::abs(t), span))
        throw IntegrationError("evolve_lindblad: step size underflow, tolerance not met", en);
    }
  }
  return traj;
}

DensityMatrix evolve_to(const TimeDependentHamiltonian& H, const std::vector<Operator>& collapse_ops,
                        const DensityMatrix& rho0, double t0, double t_end, const SolverOptions& options) {
  if (t_end <= t0) return rho0;
  const double grid[2] = {t0, t_end};
  return evolve_lindblad(H, collapse_ops, rho0, grid, options).final_state();
}

}  // namespace qnet
