#include "qnet/quantum/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qnet/util/errors.hpp"

namespace qnet {

HilbertSpace::HilbertSpace(std::vector<std::string> labels, std::vector<int> dims)
    : labels_(std::move(labels)), dims_(std::move(dims)) {
  if (labels_.size() != dims_.size() || labels_.empty())
    throw InvalidArgument("HilbertSpace: labels and dims must be non-empty and of equal length");
  std::set<std::string> unique(labels_.begin(), labels_.end());
  if (unique.size() != labels_.size()) throw InvalidArgument("HilbertSpace: duplicate mode label");
  dimension_ = 1;
  for (int d : dims_) {
    if (d < 2) throw InvalidArgument("HilbertSpace: every mode needs dimension >= 2");
    dimension_ *= static_cast<std::size_t>(d);
  }
}

std::size_t HilbertSpace::mode_index(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw InvalidArgument("unknown mode label '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

bool HilbertSpace::has_mode(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t HilbertSpace::basis_index(const std::vector<int>& levels) const {
  if (levels.size() != dims_.size()) throw InvalidArgument("basis_index: wrong number of levels");
  std::size_t idx = 0;
  for (std::size_t m = 0; m < dims_.size(); ++m) {
    if (levels[m] < 0 || levels[m] >= dims_[m]) throw InvalidArgument("basis_index: level out of range");
    idx = idx * static_cast<std::size_t>(dims_[m]) + static_cast<std::size_t>(levels[m]);
  }
  return idx;
}

std::vector<int> HilbertSpace::levels_of(std::size_t index) const {
  std::vector<int> levels(dims_.size());
  for (std::size_t m = dims_.size(); m-- > 0;) {
    levels[m] = static_cast<int>(index % static_cast<std::size_t>(dims_[m]));
    index /= static_cast<std::size_t>(dims_[m]);
  }
  return levels;
}

Operator::Operator(HilbertSpace space, Matrix matrix) : space_(std::move(space)), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(space_.dimension());
  if (matrix_.rows() != n || matrix_.cols() != n)
    throw InvalidArgument("Operator: matrix dimension does not match space");
}

Operator Operator::zero(const HilbertSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.dimension());
  return Operator(space, Matrix::Zero(n, n));
}

Operator Operator::identity(const HilbertSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.dimension());
  return Operator(space, Matrix::Identity(n, n));
}

Operator Operator::adjoint() const { return Operator(space_, matrix_.adjoint()); }

bool Operator::is_hermitian(double rel_tol) const {
  const double scale = std::max(matrix_.norm(), 1.0);
  return (matrix_ - matrix_.adjoint()).norm() <= rel_tol * scale;
}

static void require_same_space(const HilbertSpace& a, const HilbertSpace& b) {
  if (!(a == b)) throw InvalidArgument("operators live on different Hilbert spaces");
}

Operator Operator::operator+(const Operator& o) const {
  require_same_space(space_, o.space_);
  return Operator(space_, matrix_ + o.matrix_);
}

Operator Operator::operator-(const Operator& o) const {
  require_same_space(space_, o.space_);
  return Operator(space_, matrix_ - o.matrix_);
}

Operator Operator::operator*(const Operator& o) const {
  require_same_space(space_, o.space_);
  return Operator(space_, matrix_ * o.matrix_);
}

Operator Operator::operator*(cplx s) const { return Operator(space_, matrix_ * s); }

Operator& Operator::operator+=(const Operator& o) {
  require_same_space(space_, o.space_);
  matrix_ += o.matrix_;
  return *this;
}

Operator embed(const HilbertSpace& space, const std::string& label, const Matrix& local) {
  const std::size_t target = space.mode_index(label);
  const int d = space.mode_dim(target);
  if (local.rows() != d || local.cols() != d) throw InvalidArgument("embed: local operator has wrong dimension");
  Matrix full = Matrix::Ones(1, 1);
  for (std::size_t m = 0; m < space.num_modes(); ++m) {
    const int dm = space.mode_dim(m);
    const Matrix factor = (m == target) ? local : Matrix::Identity(dm, dm);
    Matrix next(full.rows() * dm, full.cols() * dm);
    for (Eigen::Index i = 0; i < full.rows(); ++i)
      for (Eigen::Index j = 0; j < full.cols(); ++j)
        next.block(i * dm, j * dm, dm, dm) = full(i, j) * factor;
    full = std::move(next);
  }
  return Operator(space, std::move(full));
}

Operator annihilation(const HilbertSpace& space, const std::string& label) {
  const int d = space.mode_dim(space.mode_index(label));
  Matrix a = Matrix::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return embed(space, label, a);
}

Operator creation(const HilbertSpace& space, const std::string& label) {
  return annihilation(space, label).adjoint();
}

Operator number(const HilbertSpace& space, const std::string& label) {
  const int d = space.mode_dim(space.mode_index(label));
  Matrix n = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) n(k, k) = static_cast<double>(k);
  return embed(space, label, n);
}

Operator level_projector(const HilbertSpace& space, const std::string& label, int level) {
  const int d = space.mode_dim(space.mode_index(label));
  if (level < 0 || level >= d) throw InvalidArgument("level_projector: level out of range");
  Matrix p = Matrix::Zero(d, d);
  p(level, level) = 1.0;
  return embed(space, label, p);
}

Vector basis_ket(const HilbertSpace& space, const std::vector<int>& levels) {
  Vector ket = Vector::Zero(static_cast<Eigen::Index>(space.dimension()));
  ket(static_cast<Eigen::Index>(space.basis_index(levels))) = 1.0;
  return ket;
}

StateDiagnostics diagnose(const Matrix& rho) {
  StateDiagnostics d;
  d.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  d.trace_error = std::abs(rho.trace() - cplx(1.0, 0.0));
  const Matrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().minCoeff();
  return d;
}

DensityMatrix::DensityMatrix(HilbertSpace space, Matrix matrix) : space_(std::move(space)), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(space_.dimension());
  if (matrix_.rows() != n || matrix_.cols() != n)
    throw InvalidArgument("DensityMatrix: matrix dimension does not match space");
  const StateDiagnostics d = diagnose(matrix_);
  if (d.hermiticity_error > hermitian_tol) throw InvalidState("DensityMatrix: not Hermitian");
  if (d.trace_error > trace_tol) throw InvalidState("DensityMatrix: trace differs from 1");
  if (d.min_eigenvalue < eigenvalue_tol) throw InvalidState("DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::unchecked(HilbertSpace space, Matrix matrix) {
  DensityMatrix rho;
  rho.space_ = std::move(space);
  rho.matrix_ = std::move(matrix);
  return rho;
}

DensityMatrix DensityMatrix::from_ket(const HilbertSpace& space, const Vector& ket) {
  if (ket.size() != static_cast<Eigen::Index>(space.dimension()))
    throw InvalidArgument("from_ket: dimension mismatch");
  const double norm = ket.norm();
  if (std::abs(norm - 1.0) > 1e-9) throw InvalidArgument("from_ket: ket is not normalized");
  return DensityMatrix(space, ket * ket.adjoint());
}

DensityMatrix DensityMatrix::basis(const HilbertSpace& space, const std::vector<int>& levels) {
  return from_ket(space, basis_ket(space, levels));
}

DensityMatrix DensityMatrix::maximally_mixed(const HilbertSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.dimension());
  return DensityMatrix(space, Matrix::Identity(n, n) / static_cast<double>(n));
}

StateDiagnostics DensityMatrix::diagnostics() const { return diagnose(matrix_); }

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

double DensityMatrix::population(const std::vector<int>& levels) const {
  const auto i = static_cast<Eigen::Index>(space_.basis_index(levels));
  return matrix_(i, i).real();
}

}  // namespace qnet
