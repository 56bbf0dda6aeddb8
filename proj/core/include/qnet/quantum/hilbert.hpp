#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qnet {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Ordered tensor product of truncated modes. Index ordering is row-major in
/// the mode list: the first mode is the most significant digit.
class HilbertSpace {
 public:
  HilbertSpace() = default;
  HilbertSpace(std::vector<std::string> labels, std::vector<int> dims);

  std::size_t dimension() const { return dimension_; }
  std::size_t num_modes() const { return dims_.size(); }
  const std::vector<int>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int mode_dim(std::size_t mode) const { return dims_.at(mode); }
  std::size_t mode_index(const std::string& label) const;
  bool has_mode(const std::string& label) const;

  /// Flat index of a product basis state given one level per mode.
  std::size_t basis_index(const std::vector<int>& levels) const;
  std::vector<int> levels_of(std::size_t index) const;

  bool operator==(const HilbertSpace& other) const {
    return dims_ == other.dims_ && labels_ == other.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<int> dims_;
  std::size_t dimension_ = 0;
};

class Operator {
 public:
  Operator() = default;
  Operator(HilbertSpace space, Matrix matrix);

  static Operator zero(const HilbertSpace& space);
  static Operator identity(const HilbertSpace& space);

  const HilbertSpace& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }

  Operator adjoint() const;
  bool is_hermitian(double rel_tol = 1e-12) const;

  Operator operator+(const Operator& o) const;
  Operator operator-(const Operator& o) const;
  Operator operator*(const Operator& o) const;
  Operator operator*(cplx s) const;
  Operator& operator+=(const Operator& o);

 private:
  HilbertSpace space_;
  Matrix matrix_;
};

inline Operator operator*(cplx s, const Operator& op) { return op * s; }

/// Truncated lowering operator of one mode embedded in the full space.
Operator annihilation(const HilbertSpace& space, const std::string& label);
Operator creation(const HilbertSpace& space, const std::string& label);
Operator number(const HilbertSpace& space, const std::string& label);
/// Projector onto a single level of one mode.
Operator level_projector(const HilbertSpace& space, const std::string& label, int level);
/// Embeds a single-mode matrix acting on `label`.
Operator embed(const HilbertSpace& space, const std::string& label, const Matrix& local);

/// Product basis ket |levels>.
Vector basis_ket(const HilbertSpace& space, const std::vector<int>& levels);

struct StateDiagnostics {
  double hermiticity_error = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
};

class DensityMatrix {
 public:
  static constexpr double hermitian_tol = 1e-10;
  static constexpr double trace_tol = 1e-8;
  static constexpr double eigenvalue_tol = -1e-7;

  DensityMatrix() = default;
  /// Validates the invariants and throws InvalidState on violation.
  DensityMatrix(HilbertSpace space, Matrix matrix);

  static DensityMatrix from_ket(const HilbertSpace& space, const Vector& ket);
  static DensityMatrix basis(const HilbertSpace& space, const std::vector<int>& levels);
  static DensityMatrix maximally_mixed(const HilbertSpace& space);
  /// Skips validation. For integrator output, whose diagnostics are reported
  /// separately instead of thrown.
  static DensityMatrix unchecked(HilbertSpace space, Matrix matrix);

  const HilbertSpace& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }
  StateDiagnostics diagnostics() const;
  double purity() const;
  /// Probability of the product basis state |levels>.
  double population(const std::vector<int>& levels) const;

 private:
  HilbertSpace space_;
  Matrix matrix_;
};

StateDiagnostics diagnose(const Matrix& rho);

}  // namespace qnet
