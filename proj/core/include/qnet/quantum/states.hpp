#pragma once

#include <string>
#include <vector>

#include "qnet/quantum/hilbert.hpp"

namespace qnet {

cplx expectation(const DensityMatrix& rho, const Operator& obs);
/// Tr[rho obs] for a Hermitian observable; throws if the imaginary part exceeds 1e-9.
double expectation_real(const DensityMatrix& rho, const Operator& obs);

/// Reduced state on the kept modes, which stay in the order of the parent space.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep_labels);

/// <psi|rho|psi> for a normalized pure target.
double state_fidelity(const DensityMatrix& rho, const Vector& target);

/// Nearest PSD, unit-trace matrix (eigenvalue clipping). Never applied implicitly.
DensityMatrix project_to_psd(const DensityMatrix& rho);

}  // namespace qnet
