#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qnet/model/hamiltonians.hpp"
#include "qnet/model/network.hpp"
#include "qnet/model/sideband_rate.hpp"
#include "qnet/protocols/simulation.hpp"
#include "qnet/quantum/propagator.hpp"
#include "qnet/quantum/states.hpp"
#include "qnet/util/errors.hpp"

using namespace qnet;

namespace {

const NetworkModel device = NetworkModel::reference_device();
const NetworkModel ideal = device.lossless();

std::vector<double> observe_static(const TimeDependentHamiltonian& H, const DensityMatrix& rho0,
                                   const std::vector<double>& t, const Operator& obs) {
  return evolve_static(H.static_part(), {}, rho0, t).observe(obs);
}

JunctionParams junction() {
  JunctionParams j;
  j.josephson_energy = AngularFrequency::mhz(20000.0);
  j.phi_a = 0.3;
  j.phi_b = 0.05;
  j.qubit_frequency = device.q1.frequency;
  j.bus_frequency = device.bus.frequency;
  return j;
}

}  // namespace

TEST(NetworkModel, FrequencyMatching) {
  EXPECT_NEAR(frequency_matching(device, 1).in_mhz(), 248.8, 1e-9);
  EXPECT_NEAR(frequency_matching(device, 2).in_mhz(), 168.8, 1e-9);
  NetworkModel same = device;
  same.q1.frequency = same.bus.frequency;
  EXPECT_EQ(frequency_matching(same, 1).value(), 0.0);
}

TEST(NetworkModel, BusQualityFactor) {
  EXPECT_NEAR(device.bus_quality_factor() / 2.0e5, 1.0, 0.02);
  EXPECT_NO_THROW(check_quality_factor(device, device.bus_quality_factor() * 1.005));
  EXPECT_THROW(check_quality_factor(device, device.bus_quality_factor() * 1.05), InvalidArgument);
  EXPECT_NEAR(device.with_bus_quality_factor(5e5).bus_quality_factor(), 5e5, 1e-6);
}

TEST(NetworkModel, RejectsInvalidParameters) {
  NetworkModel m = device;
  m.q1.t2_echo_s = 3 * m.q1.t1_s;
  EXPECT_THROW(m.validate(), InvalidArgument);
  m = device;
  m.bus.lifetime_s = 0.0;
  EXPECT_THROW(m.validate(), InvalidArgument);
  m = device;
  m.chi.q1_q2 = AngularFrequency::hz(std::nan(""));
  EXPECT_THROW(m.validate(), InvalidArgument);
}

TEST(CollapseOperators, ReferenceDeviceHasFiveChannels) {
  EXPECT_EQ(collapse_operators(device).size(), 5u);
  NetworkModel ramsey = device;
  ramsey.dephasing = DephasingSource::Ramsey;
  EXPECT_NEAR(pure_dephasing_rate(ramsey.q2.t1_s, ramsey.t2(2)), 1.0 / (8 * us) - 1.0 / (50 * us), 1e-6);
}

TEST(CollapseOperators, DephasingVanishesAtTwiceT1) {
  NetworkModel m = device;
  for (QubitSpec* q : {&m.q1, &m.q2}) q->t2_ramsey_s = q->t2_echo_s = 2 * q->t1_s;
  EXPECT_EQ(collapse_operators(m).size(), 3u);
  EXPECT_TRUE(collapse_operators(ideal).empty());
}

TEST(CollapseOperators, RatesReproduceCoherenceTimes) {
  // Off-diagonal q1 coherence decays at 1/T2 with only the q1 channels active.
  NetworkModel m = device.without_bus_loss();
  m.q2.t1_s = m.q2.t2_ramsey_s = m.q2.t2_echo_s = std::numeric_limits<double>::infinity();
  const HilbertSpace s = m.space();
  Vector ket = (basis_ket(s, {0, 0, 0}) + basis_ket(s, {1, 0, 0})) / std::sqrt(2.0);
  const double t = 10 * us;
  const DensityMatrix out =
      static_channel(Operator::zero(s), collapse_operators(m), t).apply(DensityMatrix::from_ket(s, ket));
  const auto i0 = static_cast<Eigen::Index>(s.basis_index({0, 0, 0}));
  const auto i1 = static_cast<Eigen::Index>(s.basis_index({1, 0, 0}));
  EXPECT_NEAR(std::abs(out.matrix()(i0, i1)), 0.5 * std::exp(-t / m.t2(1)), 1e-10);
  EXPECT_NEAR(out.matrix()(i1, i1).real(), 0.5 * std::exp(-t / m.q1.t1_s), 1e-10);
}

TEST(Sideband, ResonantSwapAtHalfRabiPeriod) {
  const auto omega = AngularFrequency::mhz(5.0);
  const auto H = build_sideband_hamiltonian(ideal, 1, omega, {});
  const NetworkObservables obs(ideal.space());
  const std::vector<double> t{0.0, 50 * ns, 100 * ns};
  const auto pb = observe_static(H, excited_state(ideal, 1), t, obs.nb);
  EXPECT_NEAR(pb[1], 0.5, 1e-10);
  EXPECT_NEAR(pb[2], 1.0, 1e-10);
}

TEST(Sideband, ZeroRateGivesZeroOperator) {
  const auto H = build_sideband_hamiltonian(ideal, 2, {}, {});
  EXPECT_TRUE(H.is_static());
  EXPECT_EQ(H.static_part().matrix().norm(), 0.0);
  EXPECT_THROW(build_sideband_hamiltonian(ideal, 3, AngularFrequency::mhz(1.0), {}), InvalidArgument);
}

TEST(Sideband, DetunedRabiMaximum) {
  const auto omega = AngularFrequency::mhz(5.0);
  const auto H = build_sideband_hamiltonian(ideal, 1, omega, AngularFrequency::mhz(5.0),
                                            {SidebandFrame::Static, 0.0, std::nullopt});
  const NetworkObservables obs(ideal.space());
  const auto t = linear_grid(0.0, 400 * ns, 4001);
  const auto pb = observe_static(H, excited_state(ideal, 1), t, obs.nb);
  EXPECT_NEAR(*std::max_element(pb.begin(), pb.end()), 0.5, 1e-5);
}

TEST(Sideband, FrameRepresentationsAgree) {
  const auto omega = AngularFrequency::mhz(4.0);
  const auto delta = AngularFrequency::mhz(-3.0);
  const auto rotating = build_sideband_hamiltonian(ideal, 2, omega, delta);
  const auto fixed = build_sideband_hamiltonian(ideal, 2, omega, delta, {SidebandFrame::Static, 0.0, std::nullopt});
  EXPECT_FALSE(rotating.is_static());
  const NetworkObservables obs(ideal.space());
  const auto t = linear_grid(0.0, 1 * us, 21);
  SolverOptions opts;
  opts.rtol = 1e-10;
  opts.atol = 1e-12;
  const auto a = evolve_lindblad(rotating, {}, excited_state(ideal, 2), t, opts).observe(obs.n2);
  const auto b = observe_static(fixed, excited_state(ideal, 2), t, obs.n2);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-6);
}

TEST(Hamiltonians, HermitianAtRandomTimes) {
  DriveConfig drive = DriveConfig::resonant(AngularFrequency::mhz(5.0));
  drive.detuning = AngularFrequency::mhz(2.0);
  drive.relative_detuning = AngularFrequency::mhz(0.3);
  drive.phase1 = 0.4;
  drive.phase2 = -1.1;
  drive.envelope1 = drive.envelope2 = PulseShape::padded(140 * ns, 4 * ns, 40 * ns);
  NetworkModel m = device;
  m.cross_kerr_enabled = true;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-20 * ns, 200 * ns);
  std::vector<double> times(20);
  for (double& t : times) t = u(rng);
  EXPECT_NO_THROW(build_raman_hamiltonian(m, drive).check_hermitian(times));
  EXPECT_NO_THROW(build_sideband_hamiltonian(m, 1, AngularFrequency::mhz(5.0), AngularFrequency::mhz(1.0),
                                             {SidebandFrame::Rotating, 0.7, PulseShape::padded(100 * ns, 4 * ns, 40 * ns)})
                      .check_hermitian(times));
}

TEST(Hamiltonians, ExcitationNumberConserved) {
  DriveConfig drive;
  drive.omega1 = AngularFrequency::mhz(5.0);
  drive.omega2 = AngularFrequency::mhz(3.5);
  drive.detuning = AngularFrequency::mhz(4.0);
  drive.relative_detuning = AngularFrequency::mhz(-1.0);
  drive.phase2 = 0.9;
  NetworkModel m = ideal;
  m.cross_kerr_enabled = true;
  const NetworkObservables obs(m.space());
  const auto t = linear_grid(0.0, 3 * us, 31);
  const Trajectory traj = evolve_static(build_raman_hamiltonian(m, drive).static_part(), {}, excited_state(m, 1), t);
  for (const auto& rho : traj.states)
    EXPECT_NEAR(expectation_real(rho, obs.n1 + obs.n2 + obs.nb), 1.0, 1e-8);
}

TEST(Raman, ResonantPeriodAndSwap) {
  const auto omega = AngularFrequency::mhz(5.04);
  const double w = omega.value();
  const NetworkObservables obs(ideal.space());
  const auto H = build_raman_hamiltonian(ideal, DriveConfig::resonant(omega));
  const auto t = linear_grid(0.0, 2 * us, 201);
  const auto traj = evolve_static(H.static_part(), {}, excited_state(ideal, 1), t);
  const auto p1 = traj.observe(obs.n1), p2 = traj.observe(obs.n2);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double c = std::cos(w * t[i] / (2.0 * std::sqrt(2.0)));
    EXPECT_NEAR(p1[i], std::pow(c, 4), 1e-9);
    EXPECT_NEAR(p2[i], std::pow(1.0 - c * c, 2), 1e-9);
  }
  const double period = 2.0 * std::sqrt(2.0) * std::numbers::pi / w;
  const std::vector<double> tp{0.0, period / 2.0, period};
  const auto q = evolve_static(H.static_part(), {}, excited_state(ideal, 1), tp).observe(obs.n2);
  EXPECT_NEAR(q[1], 1.0, 1e-10);
  EXPECT_NEAR(q[2], 0.0, 1e-10);
}

TEST(Raman, DarkStateIsStationary) {
  const HilbertSpace s = ideal.space();
  const Vector dark = (basis_ket(s, {1, 0, 0}) - basis_ket(s, {0, 1, 0})) / std::sqrt(2.0);
  const auto H = build_raman_hamiltonian(ideal, DriveConfig::resonant(AngularFrequency::mhz(5.0)));
  const DensityMatrix out = static_channel(H.static_part(), {}, 1.7 * us).apply(DensityMatrix::from_ket(s, dark));
  EXPECT_NEAR(state_fidelity(out, dark), 1.0, 1e-10);
}

TEST(Raman, SingleDriveReducesToSideband) {
  DriveConfig drive;
  drive.omega1 = AngularFrequency::mhz(5.0);
  drive.detuning = AngularFrequency::mhz(2.5);
  const auto raman = build_raman_hamiltonian(ideal, drive);
  const auto sideband = build_sideband_hamiltonian(ideal, 1, drive.omega1, -drive.detuning,
                                                   {SidebandFrame::Static, 0.0, std::nullopt});
  EXPECT_LT((raman.static_part().matrix() - sideband.static_part().matrix()).norm(), 1e-6);
}

TEST(DualRail, RateFormula) {
  DriveConfig drive = DriveConfig::resonant(AngularFrequency::mhz(6.6));
  drive.detuning = AngularFrequency::mhz(31.43);
  const auto eff = effective_dual_rail(ideal, drive);
  EXPECT_NEAR(eff.omega_r.in_mhz(), 6.6 * 6.6 / 31.43, 1e-9);
  EXPECT_NEAR(eff.omega_r.in_mhz(), 1.386, 5e-4);
  EXPECT_NEAR(std::sqrt(eff.omega_r.in_mhz() * 31.43), 6.6, 1e-9);
  EXPECT_FALSE(eff.perturbative_warning);
  drive.omega1 = drive.omega2 = {};
  EXPECT_EQ(effective_dual_rail(ideal, drive).omega_r.value(), 0.0);
  drive.detuning = {};
  EXPECT_THROW(effective_dual_rail(ideal, drive), InvalidArgument);
}

TEST(DualRail, PerturbativeWarning) {
  DriveConfig drive = DriveConfig::resonant(AngularFrequency::mhz(10.0));
  drive.detuning = AngularFrequency::mhz(25.0);
  EXPECT_TRUE(effective_dual_rail(ideal, drive).perturbative_warning);
}

TEST(DualRail, SecondOrderExchangeMatchesFullModel) {
  // Delta / Omega = 5: the exchange between |eg0> and |ge0> follows the
  // second-order rate Omega^2 / (2 Delta) over one period.
  const double w = AngularFrequency::mhz(5.0).value();
  const double D = 5.0 * w;
  DriveConfig drive = DriveConfig::resonant(AngularFrequency::rad_per_s(w));
  drive.detuning = AngularFrequency::rad_per_s(D);
  const double rate = w * w / (2.0 * D);
  const auto t = linear_grid(0.0, two_pi / rate, 41);
  const NetworkObservables obs(ideal.space());
  const auto p2 = evolve_static(build_raman_hamiltonian(ideal, drive).static_part(), {}, excited_state(ideal, 1), t)
                      .observe(obs.n2);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(p2[i], std::pow(std::sin(rate * t[i] / 2.0), 2), 0.05);
  EXPECT_NEAR(exact_exchange_splitting(drive).value() / rate, 1.0, 0.05);
}

TEST(SidebandRate, DegenerateIsTwiceNondegenerate) {
  JunctionParams deg = junction();
  const double gap = std::abs(deg.bus_frequency.value() - deg.qubit_frequency.value());
  deg.pump1 = deg.pump2 = AngularFrequency::rad_per_s(gap / 2.0);
  const double xi = 0.013;
  deg.eps1 = deg.eps2 = xi * (deg.qubit_frequency.value() - deg.pump1.value());

  JunctionParams nondeg = junction();
  nondeg.pump1 = AngularFrequency::rad_per_s(2.0 * gap);
  nondeg.pump2 = AngularFrequency::rad_per_s(3.0 * gap);
  nondeg.eps1 = xi * (nondeg.qubit_frequency.value() - nondeg.pump1.value());
  nondeg.eps2 = xi * (nondeg.qubit_frequency.value() - nondeg.pump2.value());
  EXPECT_NEAR(std::abs(nondeg.xi1()), std::abs(deg.xi1()), 1e-15);

  const double r = sideband_rate_from_pumps(deg, PumpMatching::Degenerate) /
                   sideband_rate_from_pumps(nondeg, PumpMatching::Nondegenerate);
  EXPECT_NEAR(r, 2.0, 1e-12);
}

TEST(SidebandRate, SinglePumpTermByTerm) {
  JunctionParams j = junction();
  const double gap = std::abs(j.bus_frequency.value() - j.qubit_frequency.value());
  j.pump1 = j.pump2 = AngularFrequency::rad_per_s(gap / 2.0);
  const double xi = 0.02;
  j.eps1 = xi * (j.qubit_frequency.value() - j.pump1.value());
  // Only the xi1^2 term and its conjugate survive: |S| = xi^2.
  const double expected = 2.0 * j.josephson_energy.value() * std::pow(j.phi_a * j.phi_b, 2) * xi * xi;
  EXPECT_NEAR(sideband_rate_from_pumps(j, PumpMatching::Degenerate).value() / expected, 1.0, 1e-12);
  j.eps1 = 0.0;
  EXPECT_EQ(sideband_rate_from_pumps(j, PumpMatching::Degenerate).value(), 0.0);
}

TEST(SidebandRate, MatchingConditionEnforced) {
  JunctionParams j = junction();
  j.pump1 = j.pump2 = AngularFrequency::mhz(100.0);
  j.eps1 = j.eps2 = 1e6;
  EXPECT_THROW(sideband_rate_from_pumps(j, PumpMatching::Degenerate), InvalidArgument);
  EXPECT_THROW(sideband_rate_from_pumps(j, PumpMatching::Nondegenerate), InvalidArgument);
  j.phi_a = 1.5;
  EXPECT_THROW(sideband_rate_from_pumps(j, PumpMatching::Degenerate), InvalidArgument);
}

TEST(Stark, ShiftedResonance) {
  const StarkModel stark{AngularFrequency::mhz(-2.0), AngularFrequency::mhz(-1.0)};
  const auto base = AngularFrequency::mhz(248.8);
  EXPECT_NEAR(stark_shifted_resonance(stark, base, 0.0).in_mhz(), 248.8, 1e-9);
  EXPECT_NEAR(stark_shifted_resonance(stark, base, 1.0).in_mhz(), 249.3, 1e-9);
  const StarkModel equal{AngularFrequency::mhz(-1.5), AngularFrequency::mhz(-1.5)};
  EXPECT_NEAR(stark_shifted_resonance(equal, base, 3.0).in_mhz(), 248.8, 1e-9);
  EXPECT_NEAR(stark_shifted_resonance(stark, device, 1, 1.0).in_mhz(), 249.3, 1e-9);
}

TEST(Stark, ShiftIsLinearInPower) {
  const StarkModel stark{AngularFrequency::mhz(-2.0), AngularFrequency::mhz(0.5)};
  const auto base = AngularFrequency::mhz(168.8);
  const double s1 = stark_shifted_resonance(stark, base, 1.0).value() - base.value();
  for (double p : {0.5, 2.0, 3.5})
    EXPECT_NEAR(stark_shifted_resonance(stark, base, p).value() - base.value(), p * s1, 1e-6);
}
