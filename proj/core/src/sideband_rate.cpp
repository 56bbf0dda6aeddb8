#include "qnet/model/sideband_rate.hpp"

#include <cmath>

#include "qnet/util/errors.hpp"

namespace qnet {

void JunctionParams::validate() const {
  if (std::abs(phi_a) >= 1.0 || std::abs(phi_b) >= 1.0) throw InvalidArgument("zero-point phases must satisfy |phi| < 1");
  if (!(pump1.value() > 0.0) || !(pump2.value() > 0.0)) throw InvalidArgument("pump frequencies must be positive");
  if (qubit_frequency == pump1 || qubit_frequency == pump2) throw InvalidArgument("pump resonant with the qubit");
}

cplx JunctionParams::xi1() const { return eps1 / (qubit_frequency.value() - pump1.value()); }
cplx JunctionParams::xi2() const { return eps2 / (qubit_frequency.value() - pump2.value()); }

AngularFrequency sideband_rate_from_pumps(const JunctionParams& j, PumpMatching matching, double rel_tol) {
  j.validate();
  const double gap = std::abs(j.qubit_frequency.value() - j.bus_frequency.value());
  const double w1 = j.pump1.value(), w2 = j.pump2.value();
  const double tol = rel_tol * std::max(gap, 1.0);
  const cplx x1 = j.xi1(), x2 = j.xi2();
  cplx s;
  if (matching == PumpMatching::Degenerate) {
    if (std::abs(w1 + w2 - gap) > tol || std::abs(w1 - w2) > tol)
      throw InvalidArgument("degenerate matching violated: need omega_1 = omega_2 and omega_1 + omega_2 = |omega_a - omega_b|");
    s = 0.5 * (x1 * x1 + std::conj(x1 * x1)) + 0.5 * (x2 * x2 + std::conj(x2 * x2)) + std::conj(x1) * x2 +
        std::conj(x2) * x1;
  } else {
    if (std::abs(std::abs(w2 - w1) - gap) > tol)
      throw InvalidArgument("nondegenerate matching violated: need |omega_2 - omega_1| = |omega_a - omega_b|");
    s = std::conj(x1) * x2 + std::conj(x2) * x1;
  }
  const double prefactor = j.josephson_energy.value() * j.phi_a * j.phi_a * j.phi_b * j.phi_b;
  return AngularFrequency::rad_per_s(2.0 * prefactor * std::abs(s));
}

}  // namespace qnet
