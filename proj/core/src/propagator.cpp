#include "qnet/quantum/propagator.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "qnet/util/errors.hpp"

namespace qnet {

namespace {

Eigen::Map<const Vector> as_vec(const Matrix& m) { return {m.data(), m.size()}; }

}  // namespace

Channel::Channel(HilbertSpace space, Matrix superop) : space_(std::move(space)), superop_(std::move(superop)) {
  const auto n2 = static_cast<Eigen::Index>(space_.dimension() * space_.dimension());
  if (superop_.rows() != n2 || superop_.cols() != n2) throw InvalidArgument("Channel: superoperator dimension mismatch");
}

Channel Channel::identity(const HilbertSpace& space) {
  const auto n2 = static_cast<Eigen::Index>(space.dimension() * space.dimension());
  return Channel(space, Matrix::Identity(n2, n2));
}

Channel Channel::unitary(const HilbertSpace& space, const Matrix& U) {
  return Channel(space, Eigen::kroneckerProduct(U.conjugate(), U).eval());
}

Matrix Channel::apply(const Matrix& rho) const {
  const auto n = static_cast<Eigen::Index>(space_.dimension());
  if (rho.rows() != n || rho.cols() != n) throw InvalidArgument("Channel::apply: dimension mismatch");
  const Vector out = superop_ * as_vec(rho);
  return Eigen::Map<const Matrix>(out.data(), n, n);
}

DensityMatrix Channel::apply(const DensityMatrix& rho) const {
  if (!(rho.space() == space_)) throw InvalidArgument("Channel::apply: state on a different space");
  return DensityMatrix::unchecked(space_, apply(rho.matrix()));
}

Channel Channel::then(const Channel& next) const {
  if (!(next.space_ == space_)) throw InvalidArgument("Channel::then: different spaces");
  return Channel(space_, next.superop_ * superop_);
}

Matrix liouvillian(const Matrix& H, const std::vector<Matrix>& collapse) {
  const auto n = H.rows();
  const Matrix id = Matrix::Identity(n, n);
  Matrix k = Matrix::Zero(n, n);
  for (const auto& L : collapse) k += L.adjoint() * L;
  const Matrix heff = H - cplx(0.0, 0.5) * k;
  // -i(Heff rho - rho Heff^dag)
  Matrix gen = cplx(0.0, -1.0) * Eigen::kroneckerProduct(id, heff).eval() +
               cplx(0.0, 1.0) * Eigen::kroneckerProduct(heff.conjugate(), id).eval();
  for (const auto& L : collapse) gen += Eigen::kroneckerProduct(L.conjugate(), L).eval();
  return gen;
}

Matrix liouvillian(const Operator& H, const std::vector<Operator>& collapse) {
  std::vector<Matrix> ls;
  ls.reserve(collapse.size());
  for (const auto& L : collapse) {
    if (!(L.space() == H.space())) throw InvalidArgument("liouvillian: collapse operator on a different space");
    ls.push_back(L.matrix());
  }
  if (!H.is_hermitian()) throw InvalidArgument("liouvillian: Hamiltonian is not Hermitian");
  return liouvillian(H.matrix(), ls);
}

Channel static_channel(const Operator& H, const std::vector<Operator>& collapse, double duration) {
  if (duration < 0.0) throw InvalidArgument("static_channel: negative duration");
  const Matrix gen = liouvillian(H, collapse) * duration;
  return Channel(H.space(), gen.exp());
}

Trajectory evolve_static(const Operator& H, const std::vector<Operator>& collapse, const DensityMatrix& rho0,
                         std::span<const double> times) {
  if (times.empty()) throw InvalidArgument("evolve_static: empty time grid");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw InvalidArgument("evolve_static: times must be strictly increasing");
  const Matrix gen = liouvillian(H, collapse);
  Trajectory traj;
  traj.times.assign(times.begin(), times.end());
  traj.states.push_back(rho0);
  Matrix rho = rho0.matrix();
  const auto n = rho.rows();
  double cached_dt = -1.0;
  Matrix step;
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double dt = times[i] - times[i - 1];
    if (std::abs(dt - cached_dt) > 1e-9 * dt) {
      step = (gen * dt).exp();
      cached_dt = dt;
    }
    const Vector v = step * as_vec(rho);
    rho = Eigen::Map<const Matrix>(v.data(), n, n);
    const StateDiagnostics d = diagnose(rho);
    traj.stats.max_trace_error = std::max(traj.stats.max_trace_error, d.trace_error);
    traj.stats.max_hermiticity_error = std::max(traj.stats.max_hermiticity_error, d.hermiticity_error);
    traj.stats.min_eigenvalue = std::min(traj.stats.min_eigenvalue, d.min_eigenvalue);
    traj.states.push_back(DensityMatrix::unchecked(H.space(), rho));
  }
  return traj;
}

}  // namespace qnet
