#include "qnet/analysis/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "qnet/quantum/states.hpp"
#include "qnet/util/errors.hpp"

namespace qnet {

namespace {

void require_two_qubit(const DensityMatrix& rho) {
  if (rho.space().dimension() != 4 || rho.space().num_modes() != 2)
    throw InvalidArgument("expected a two-qubit density matrix");
  const StateDiagnostics d = rho.diagnostics();
  if (d.hermiticity_error > 1e-9 || d.trace_error > 1e-7 || d.min_eigenvalue < DensityMatrix::eigenvalue_tol)
    throw InvalidState("invalid two-qubit density matrix");
}

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

}  // namespace

DensityMatrix qubit_pair_state(const DensityMatrix& network_state) {
  return partial_trace(network_state, {"q1", "q2"});
}

double concurrence(const DensityMatrix& rho) {
  require_two_qubit(rho);
  const Eigen::Matrix4cd yy = Eigen::kroneckerProduct(pauli_y(), pauli_y()).eval();
  const Eigen::Matrix4cd r = rho.matrix();
  const Eigen::Matrix4cd tilde = yy * r.conjugate() * yy;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(r * tilde);
  std::vector<double> lambdas;
  for (int i = 0; i < 4; ++i) lambdas.push_back(std::sqrt(std::max(es.eigenvalues()(i).real(), 0.0)));
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  return std::clamp(lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3], 0.0, 1.0);
}

XXCurve xx_correlator(const DensityMatrix& rho, std::span<const double> phases) {
  require_two_qubit(rho);
  const Eigen::Matrix4cd xx = Eigen::kroneckerProduct(pauli_x(), pauli_x()).eval();
  const Eigen::Matrix4cd xy = Eigen::kroneckerProduct(pauli_x(), pauli_y()).eval();
  const double a = (rho.matrix() * xx).trace().real();
  const double b = (rho.matrix() * xy).trace().real();
  XXCurve out;
  out.phases.assign(phases.begin(), phases.end());
  for (double phi : phases) out.values.push_back(std::cos(phi) * a + std::sin(phi) * b);
  out.amplitude = std::hypot(a, b);
  out.phase = std::atan2(b, a);
  return out;
}

double bell_fidelity(const DensityMatrix& rho) {
  require_two_qubit(rho);
  using namespace two_qubit;
  const Matrix& r = rho.matrix();
  return 0.5 * (r(eg, eg).real() + r(ge, ge).real()) + std::abs(r(eg, ge));
}

}  // namespace qnet
