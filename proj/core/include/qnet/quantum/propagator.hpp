#pragma once

#include <span>
#include <vector>

#include "qnet/quantum/hilbert.hpp"
#include "qnet/quantum/lindblad.hpp"

namespace qnet {

/// Linear map on column-stacked density matrices, vec(A rho B) = (B^T (x) A) vec(rho).
class Channel {
 public:
  Channel() = default;
  Channel(HilbertSpace space, Matrix superop);

  static Channel identity(const HilbertSpace& space);
  /// Unitary conjugation rho -> U rho U^dag.
  static Channel unitary(const HilbertSpace& space, const Matrix& U);

  const HilbertSpace& space() const { return space_; }
  const Matrix& superoperator() const { return superop_; }

  DensityMatrix apply(const DensityMatrix& rho) const;
  Matrix apply(const Matrix& rho) const;
  /// Channel that applies `this` first and then `next`.
  Channel then(const Channel& next) const;

 private:
  HilbertSpace space_;
  Matrix superop_;
};

/// Generator of the Lindblad equation for a time-independent Hamiltonian.
Matrix liouvillian(const Matrix& H, const std::vector<Matrix>& collapse);
Matrix liouvillian(const Operator& H, const std::vector<Operator>& collapse);

/// exp(L * duration) for a static generator.
Channel static_channel(const Operator& H, const std::vector<Operator>& collapse, double duration);

/// Exact evolution under a static generator sampled at `times`; equal
/// intervals reuse one exponential.
Trajectory evolve_static(const Operator& H, const std::vector<Operator>& collapse, const DensityMatrix& rho0,
                         std::span<const double> times);

}  // namespace qnet
