#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "qnet/protocols/simulation.hpp"
#include "qnet/quantum/lindblad.hpp"
#include "qnet/quantum/propagator.hpp"
#include "qnet/quantum/states.hpp"
#include "qnet/tuneup/pulse_shape.hpp"
#include "qnet/util/errors.hpp"

using namespace qnet;

namespace {

const HilbertSpace qubit({"q"}, {2});

Operator sigma_x() {
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  return Operator(qubit, x);
}

}  // namespace

TEST(Lindblad, ZeroGeneratorIsIdentity) {
  const TimeDependentHamiltonian H(Operator::zero(qubit));
  const DensityMatrix rho0 = DensityMatrix::basis(qubit, {1});
  const std::vector<double> t{0.0, 1 * us, 5 * us};
  const Trajectory traj = evolve_lindblad(H, {}, rho0, t);
  for (const auto& rho : traj.states) EXPECT_LT((rho.matrix() - rho0.matrix()).norm(), 1e-14);
}

TEST(Lindblad, AmplitudeDampingIsExponential) {
  const double gamma = 1.0 / (10 * us);
  const TimeDependentHamiltonian H(Operator::zero(qubit));
  const std::vector<Operator> L{annihilation(qubit, "q") * std::sqrt(gamma)};
  const std::vector<double> t = linear_grid(0.0, 30 * us, 31);
  const Trajectory traj = evolve_lindblad(H, L, DensityMatrix::basis(qubit, {1}), t);
  const auto p = traj.observe(number(qubit, "q"));
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(p[i], std::exp(-gamma * t[i]), 1e-7);
}

TEST(Lindblad, RabiOscillation) {
  const double omega = two_pi * 1e6;
  const TimeDependentHamiltonian H(sigma_x() * cplx(omega / 2.0));
  const std::vector<double> t = linear_grid(0.0, 3 * us, 61);
  const Trajectory traj = evolve_lindblad(H, {}, DensityMatrix::basis(qubit, {0}), t);
  const auto p = traj.observe(number(qubit, "q"));
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(p[i], std::pow(std::sin(omega * t[i] / 2.0), 2), 1e-6);
}

TEST(Lindblad, DrivenTermsFollowEnvelope) {
  // A square pulse of area pi through a drive term equals a static pi rotation.
  const double omega = two_pi * 2e6;
  const PulseShape p = PulseShape::padded(250 * ns, 4 * ns, 40 * ns);
  const auto f = shaped_envelope(p);
  const TimeDependentHamiltonian H(Operator::zero(qubit),
                                   {DriveTerm{sigma_x() * cplx(omega / 2.0), [f](double t) { return cplx(f(t)); }}});
  const DensityMatrix out = evolve_to(H, {}, DensityMatrix::basis(qubit, {0}), 0.0, p.total_s);
  const double area = omega * envelope_area(p);
  EXPECT_NEAR(out.population({1}), std::pow(std::sin(area / 2.0), 2), 1e-6);
}

TEST(Lindblad, UnitaryEvolutionPreservesPurity) {
  const HilbertSpace s({"a", "b"}, {2, 3});
  const Operator h = (creation(s, "a") * annihilation(s, "b") + creation(s, "b") * annihilation(s, "a")) *
                         cplx(two_pi * 3e6) +
                     number(s, "b") * cplx(two_pi * 1e6);
  const std::vector<double> t = linear_grid(0.0, 2 * us, 41);
  const Trajectory traj = evolve_lindblad(TimeDependentHamiltonian(h), {}, DensityMatrix::basis(s, {1, 0}), t);
  for (const auto& rho : traj.states) EXPECT_NEAR(rho.purity(), 1.0, 1e-7);
  EXPECT_LT(traj.stats.max_trace_error, 1e-8);
  EXPECT_LT(traj.stats.max_hermiticity_error, 1e-10);
  EXPECT_GT(traj.stats.min_eigenvalue, -1e-7);
}

TEST(Lindblad, TighterToleranceConverges) {
  const double gamma = 1.0 / (3 * us);
  const TimeDependentHamiltonian H(sigma_x() * cplx(two_pi * 1.3e6));
  const std::vector<Operator> L{annihilation(qubit, "q") * std::sqrt(gamma)};
  const std::vector<double> t{0.0, 4 * us};
  SolverOptions loose, tight;
  loose.rtol = 1e-6;
  loose.atol = 1e-8;
  tight.rtol = 1e-10;
  tight.atol = 1e-12;
  const auto a = evolve_lindblad(H, L, DensityMatrix::basis(qubit, {1}), t, loose);
  const auto b = evolve_lindblad(H, L, DensityMatrix::basis(qubit, {1}), t, tight);
  EXPECT_LT((a.final_state().matrix() - b.final_state().matrix()).cwiseAbs().maxCoeff(), 10 * loose.rtol);
}

TEST(Lindblad, StaticChannelMatchesIntegrator) {
  const HilbertSpace s({"a", "b"}, {2, 3});
  const Operator h = (creation(s, "a") * annihilation(s, "b") + creation(s, "b") * annihilation(s, "a")) *
                     cplx(two_pi * 2e6);
  const std::vector<Operator> L{annihilation(s, "b") * std::sqrt(1.0 / (2 * us)),
                                number(s, "a") * std::sqrt(2.0 / (20 * us))};
  const DensityMatrix rho0 = DensityMatrix::basis(s, {1, 0});
  SolverOptions opts;
  opts.rtol = 1e-11;
  opts.atol = 1e-13;
  const std::vector<double> t = linear_grid(0.0, 3 * us, 13);
  const Trajectory rk = evolve_lindblad(TimeDependentHamiltonian(h), L, rho0, t, opts);
  const Trajectory ex = evolve_static(h, L, rho0, t);
  for (std::size_t i = 0; i < t.size(); ++i)
    EXPECT_LT((rk.states[i].matrix() - ex.states[i].matrix()).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Lindblad, ChannelCompositionIsSemigroup) {
  const Operator h = sigma_x() * cplx(two_pi * 1e6);
  const std::vector<Operator> L{annihilation(qubit, "q") * std::sqrt(1e5)};
  const Channel a = static_channel(h, L, 200 * ns);
  const Channel b = static_channel(h, L, 300 * ns);
  const Channel ab = static_channel(h, L, 500 * ns);
  EXPECT_LT((a.then(b).superoperator() - ab.superoperator()).norm(), 1e-10);
}

TEST(Lindblad, RejectsNonHermitianHamiltonian) {
  const TimeDependentHamiltonian H(annihilation(qubit, "q"));
  const std::vector<double> t{0.0, 1 * us};
  EXPECT_THROW(evolve_lindblad(H, {}, DensityMatrix::basis(qubit, {0}), t), InvalidArgument);
}

TEST(Lindblad, RejectsBadTimeGrid) {
  const TimeDependentHamiltonian H(Operator::zero(qubit));
  const std::vector<double> t{0.0, 1 * us, 1 * us};
  EXPECT_THROW(evolve_lindblad(H, {}, DensityMatrix::basis(qubit, {0}), t), InvalidArgument);
  EXPECT_THROW(evolve_lindblad(H, {}, DensityMatrix::basis(qubit, {0}), std::vector<double>{}), InvalidArgument);
}

TEST(Lindblad, StepBudgetIsReported) {
  const TimeDependentHamiltonian H(sigma_x() * cplx(two_pi * 50e6));
  SolverOptions opts;
  opts.max_steps = 10;
  const std::vector<double> t{0.0, 10 * us};
  EXPECT_THROW(evolve_lindblad(H, {}, DensityMatrix::basis(qubit, {0}), t, opts), IntegrationError);
}
