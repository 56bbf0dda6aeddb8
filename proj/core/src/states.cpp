#include "qnet/quantum/states.hpp"

#include <algorithm>
#include <cmath>

#include "qnet/util/errors.hpp"

namespace qnet {

cplx expectation(const DensityMatrix& rho, const Operator& obs) {
  if (!(rho.space() == obs.space())) throw InvalidArgument("expectation: dimension mismatch");
  return (rho.matrix() * obs.matrix()).trace();
}

double expectation_real(const DensityMatrix& rho, const Operator& obs) {
  if (!obs.is_hermitian(1e-10)) throw InvalidArgument("expectation_real: observable is not Hermitian");
  const cplx v = expectation(rho, obs);
  if (std::abs(v.imag()) > 1e-9) throw InvalidState("expectation_real: imaginary part above 1e-9");
  return v.real();
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep_labels) {
  if (keep_labels.empty()) throw InvalidArgument("partial_trace: empty keep set");
  const HilbertSpace& space = rho.space();
  std::vector<bool> keep(space.num_modes(), false);
  for (const auto& label : keep_labels) keep[space.mode_index(label)] = true;

  std::vector<std::string> labels;
  std::vector<int> dims;
  for (std::size_t m = 0; m < space.num_modes(); ++m)
    if (keep[m]) {
      labels.push_back(space.labels()[m]);
      dims.push_back(space.mode_dim(m));
    }
  HilbertSpace reduced(labels, dims);

  const auto n_red = static_cast<Eigen::Index>(reduced.dimension());
  Matrix out = Matrix::Zero(n_red, n_red);
  const auto full = static_cast<Eigen::Index>(space.dimension());
  std::vector<int> kept_i, kept_j, traced_i, traced_j;
  for (Eigen::Index i = 0; i < full; ++i) {
    const auto li = space.levels_of(static_cast<std::size_t>(i));
    for (Eigen::Index j = 0; j < full; ++j) {
      const auto lj = space.levels_of(static_cast<std::size_t>(j));
      bool diagonal_in_traced = true;
      kept_i.clear();
      kept_j.clear();
      for (std::size_t m = 0; m < space.num_modes(); ++m) {
        if (keep[m]) {
          kept_i.push_back(li[m]);
          kept_j.push_back(lj[m]);
        } else if (li[m] != lj[m]) {
          diagonal_in_traced = false;
          break;
        }
      }
      if (!diagonal_in_traced) continue;
      out(static_cast<Eigen::Index>(reduced.basis_index(kept_i)),
          static_cast<Eigen::Index>(reduced.basis_index(kept_j))) += rho.matrix()(i, j);
    }
  }
  return DensityMatrix::unchecked(std::move(reduced), std::move(out));
}

double state_fidelity(const DensityMatrix& rho, const Vector& target) {
  if (target.size() != static_cast<Eigen::Index>(rho.space().dimension()))
    throw InvalidArgument("state_fidelity: dimension mismatch");
  if (std::abs(target.norm() - 1.0) > 1e-9) throw InvalidArgument("state_fidelity: target is not normalized");
  return (target.adjoint() * rho.matrix() * target)(0, 0).real();
}

DensityMatrix project_to_psd(const DensityMatrix& rho) {
  const Matrix herm = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0);
  const double total = w.sum();
  if (total <= 0.0) throw InvalidState("project_to_psd: no positive spectral weight");
  w /= total;
  Matrix out = es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  return DensityMatrix(rho.space(), 0.5 * (out + out.adjoint()));
}

}  // namespace qnet
