#include "qnet/model/hamiltonians.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "qnet/util/errors.hpp"

namespace qnet {

namespace {

const cplx I(0.0, 1.0);

/// (Omega/2)(e^{i phi} a^dag b + h.c.)
Operator exchange(const HilbertSpace& space, const char* qubit, double omega, double phase) {
  const Operator ab = creation(space, qubit) * annihilation(space, bus_label);
  const Operator term = ab * (0.5 * omega * std::exp(I * phase));
  return term + term.adjoint();
}

}  // namespace

Operator cross_kerr_terms(const NetworkModel& network) {
  const HilbertSpace space = network.space();
  Operator h = Operator::zero(space);
  if (!network.cross_kerr_enabled) return h;
  const Operator n1 = number(space, "q1"), n2 = number(space, "q2"), nb = number(space, bus_label);
  h += n1 * nb * cplx(-network.chi.q1_bus.value());
  h += n2 * nb * cplx(-network.chi.q2_bus.value());
  h += n1 * n2 * cplx(-network.chi.q1_q2.value());
  return h;
}

TimeDependentHamiltonian build_sideband_hamiltonian(const NetworkModel& network, int qubit_index,
                                                    AngularFrequency omega, AngularFrequency detuning,
                                                    const SidebandOptions& options) {
  if (qubit_index != 1 && qubit_index != 2) throw InvalidArgument("qubit index must be 1 or 2");
  if (omega.value() < 0.0) throw InvalidArgument("sideband rate must be non-negative");
  network.validate();
  const HilbertSpace space = network.space();
  const char* q = qubit_label(qubit_index);
  const double w = omega.value();
  const double d = detuning.value();
  Operator static_part = cross_kerr_terms(network);

  std::function<double(double)> env;
  if (options.envelope) env = shaped_envelope(*options.envelope);

  std::vector<DriveTerm> terms;
  if (options.frame == SidebandFrame::Static || d == 0.0) {
    static_part += number(space, bus_label) * cplx(-d);
    Operator coupling = exchange(space, q, w, options.phase);
    if (env)
      terms.push_back({coupling, [env](double t) { return cplx(env(t), 0.0); }});
    else
      static_part += coupling;
  } else {
    const Operator ab = creation(space, q) * annihilation(space, bus_label) * (0.5 * w * std::exp(I * options.phase));
    const Operator ba = ab.adjoint();
    terms.push_back({ab, [d, env](double t) { return std::exp(I * (d * t)) * (env ? env(t) : 1.0); }});
    terms.push_back({ba, [d, env](double t) { return std::exp(-I * (d * t)) * (env ? env(t) : 1.0); }});
  }
  return TimeDependentHamiltonian(static_part, std::move(terms));
}

TimeDependentHamiltonian build_raman_hamiltonian(const NetworkModel& network, const DriveConfig& drive) {
  network.validate();
  drive.validate();
  const HilbertSpace space = network.space();
  Operator static_part = cross_kerr_terms(network);
  static_part += number(space, bus_label) * cplx(drive.detuning.value());
  static_part += number(space, "q2") * cplx(drive.relative_detuning.value());

  std::vector<DriveTerm> terms;
  const std::array<const std::optional<PulseShape>*, 2> envs{&drive.envelope1, &drive.envelope2};
  const std::array<double, 2> omegas{drive.omega1.value(), drive.omega2.value()};
  const std::array<double, 2> phases{drive.phase1, drive.phase2};
  for (int i = 0; i < 2; ++i) {
    if (omegas[i] == 0.0) continue;
    Operator coupling = exchange(space, qubit_label(i + 1), omegas[i], phases[i]);
    if (*envs[i]) {
      auto env = shaped_envelope(**envs[i]);
      terms.push_back({coupling, [env](double t) { return cplx(env(t), 0.0); }});
    } else {
      static_part += coupling;
    }
  }
  return TimeDependentHamiltonian(static_part, std::move(terms));
}

AngularFrequency frequency_matching(const NetworkModel& network, int qubit_index) {
  const double wa = network.qubit(qubit_index).frequency.value();
  return AngularFrequency::rad_per_s(std::abs(network.bus.frequency.value() - wa) / 2.0);
}

DualRailEffective effective_dual_rail(const NetworkModel& network, const DriveConfig& drive) {
  const double D = drive.detuning.value();
  const double d = drive.relative_detuning.value();
  if (D == 0.0 || D == d) throw InvalidArgument("effective_dual_rail: singular detunings (Delta = 0 or Delta = delta)");
  const double w1 = drive.omega1.value(), w2 = drive.omega2.value();
  const double D2 = D - d;

  DualRailEffective out;
  out.omega_r = AngularFrequency::rad_per_s(w1 * w2 * (2.0 * D - d) / (2.0 * D * D2));
  const double w_max = std::max(w1, w2);
  out.perturbative_warning = w_max > 0.0 && std::min(std::abs(D), std::abs(D2)) / w_max < 3.0;

  const cplx phase = std::exp(I * (drive.phase1 - drive.phase2));
  out.hamiltonian = Matrix::Zero(2, 2);
  out.hamiltonian(0, 0) = -w1 * w1 / (4.0 * D);
  out.hamiltonian(1, 1) = d - w2 * w2 / (4.0 * D2);
  out.hamiltonian(0, 1) = -0.5 * out.omega_r.value() * phase;
  out.hamiltonian(1, 0) = std::conj(out.hamiltonian(0, 1));

  const HilbertSpace space = network.space();
  const Operator n1 = number(space, "q1"), n2 = number(space, "q2"), nb = number(space, bus_label);
  const Operator hop = creation(space, "q1") * annihilation(space, "q2");
  const double g = 0.5 * w1 * w2 * (0.5 / D + 0.5 / D2);
  Operator dressed = n1 * cplx(D * (1.0 + w1 * w1 / (4.0 * D * D)));
  dressed += n2 * cplx(D2 * (1.0 + w2 * w2 / (4.0 * D2 * D2)));
  dressed += nb * cplx(-g);
  dressed += (hop * phase + (hop * phase).adjoint()) * cplx(g);
  out.dressed = dressed;
  return out;
}

AngularFrequency exact_exchange_splitting(const DriveConfig& drive) {
  Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
  h(1, 1) = drive.relative_detuning.value();
  h(2, 2) = drive.detuning.value();
  h(0, 2) = 0.5 * drive.omega1.value() * std::exp(I * drive.phase1);
  h(1, 2) = 0.5 * drive.omega2.value() * std::exp(I * drive.phase2);
  h(2, 0) = std::conj(h(0, 2));
  h(2, 1) = std::conj(h(1, 2));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(h);
  std::array<int, 3> idx{0, 1, 2};
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::norm(es.eigenvectors()(2, a)) < std::norm(es.eigenvectors()(2, b));
  });
  return AngularFrequency::rad_per_s(std::abs(es.eigenvalues()(idx[0]) - es.eigenvalues()(idx[1])));
}

AngularFrequency stark_shifted_resonance(const StarkModel& stark, AngularFrequency half_gap, double power) {
  const double shifted = half_gap.value() + 0.5 * (stark.slope_bus.value() - stark.slope_qubit.value()) * power;
  return AngularFrequency::rad_per_s(std::abs(shifted));
}

AngularFrequency stark_shifted_resonance(const StarkModel& stark, const NetworkModel& network, int qubit_index,
                                         double power) {
  const double gap = network.bus.frequency.value() - network.qubit(qubit_index).frequency.value();
  return stark_shifted_resonance(stark, AngularFrequency::rad_per_s(0.5 * gap), power);
}

}  // namespace qnet
