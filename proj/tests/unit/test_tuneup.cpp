#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qnet/model/hamiltonians.hpp"
#include "qnet/protocols/oracles.hpp"
#include "qnet/protocols/resonant.hpp"
#include "qnet/protocols/simulation.hpp"
#include "qnet/quantum/propagator.hpp"
#include "qnet/quantum/states.hpp"
#include "qnet/tuneup/beam_splitter.hpp"
#include "qnet/tuneup/calibration.hpp"
#include "qnet/tuneup/pulse_shape.hpp"
#include "qnet/util/errors.hpp"

using namespace qnet;

namespace {

const NetworkModel device = NetworkModel::reference_device();
const NetworkModel ideal = device.lossless();
constexpr double pi = std::numbers::pi;

DriveConfig detuned_drive() {
  DriveConfig d = DriveConfig::resonant(AngularFrequency::mhz(6.6));
  d.detuning = AngularFrequency::mhz(31.43);
  return d;
}

// Gate-train data whose coherent error grows with |t_eff - t_best|.
TrainOracle synthetic_train(double t_best) {
  return [t_best](const PulseShape& p) {
    std::vector<double> out;
    const double err = (p.effective_s - t_best) / (10 * ns);
    for (int k = 0; k <= 20; ++k) out.push_back(std::pow(0.99, k) * (1.0 - err * err * 0.02 * (k % 2)));
    return out;
  };
}

}  // namespace

TEST(BeamSplitter, SingleOperationIsResonantSwap) {
  const auto plan = plan_beam_splitter(AngularFrequency::mhz(5.04), 1);
  EXPECT_EQ(plan.detuning.value(), 0.0);
  EXPECT_NEAR(plan.theta, pi / 2.0, 1e-15);
  EXPECT_NEAR(plan.tau_bs, std::sqrt(2.0) * pi / AngularFrequency::mhz(5.04).value(), 1e-18);
  EXPECT_NEAR(plan.tau_swap / ns, 140.3, 0.05);
}

TEST(BeamSplitter, RoundTripAndMonotone) {
  const auto omega = AngularFrequency::mhz(5.0);
  double last_delta = -1.0, last_tau = 0.0;
  for (int n = 1; n <= 20; ++n) {
    const auto plan = plan_beam_splitter(omega, n);
    EXPECT_NEAR(beam_splitter_angle(omega, plan.detuning), pi / (2.0 * n), 1e-12) << "N = " << n;
    EXPECT_NEAR(plan.tau_swap, n * plan.tau_bs, 1e-20);
    EXPECT_NEAR(plan.tau_bs, beam_splitter_time(omega, plan.detuning), 1e-20);
    EXPECT_GE(plan.detuning.value(), 0.0);
    EXPECT_GT(plan.detuning.value(), last_delta);
    EXPECT_GT(plan.tau_swap, last_tau);
    last_delta = plan.detuning.value();
    last_tau = plan.tau_swap;
  }
  EXPECT_THROW(plan_beam_splitter(omega, 0), InvalidArgument);
  EXPECT_THROW(plan_beam_splitter(AngularFrequency{}, 2), InvalidArgument);
}

TEST(BeamSplitter, ResonantPeriodIsTwoBeamSplitterTimes) {
  const auto omega = AngularFrequency::mhz(5.0);
  EXPECT_NEAR(2.0 * beam_splitter_time(omega, {}), 2.0 * std::sqrt(2.0) * pi / omega.value(), 1e-20);
}

TEST(BeamSplitter, EveryPlanEmptiesTheBusAtSwapTime) {
  const auto omega = AngularFrequency::mhz(5.0);
  const NetworkObservables obs(ideal.space());
  for (int n = 1; n <= 20; ++n) {
    const auto plan = plan_beam_splitter(omega, n);
    DriveConfig drive = DriveConfig::resonant(omega);
    drive.detuning = plan.detuning;
    const Operator h = build_raman_hamiltonian(ideal, drive).static_part();
    const DensityMatrix out = static_channel(h, {}, plan.tau_swap).apply(excited_state(ideal, 1));
    EXPECT_LT(expectation_real(out, obs.nb), 1e-3) << "N = " << n;
    if (n == 2) EXPECT_GT(expectation_real(out, obs.n2), 0.999);
  }
}

TEST(PulseShape, FigureShapeHasExpectedArea) {
  const PulseShape p = PulseShape::padded(120 * ns, 4 * ns, 40 * ns);
  EXPECT_NEAR(p.total_s, 160 * ns, 1e-18);
  EXPECT_NEAR(p.rise_offset(), 20 * ns, 1e-18);
  EXPECT_NEAR(envelope_area(p) / p.effective_s, 1.0, 0.005);
  EXPECT_NEAR(pulse_envelope(p, p.total_s / 2.0), 1.0, 1e-6);
}

TEST(PulseShape, SymmetricAndBounded) {
  const PulseShape p = PulseShape::padded(142 * ns, 4 * ns, 40 * ns);
  for (int i = 0; i <= 200; ++i) {
    const double t = p.total_s * i / 200.0;
    const double f = pulse_envelope(p, t);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
    EXPECT_NEAR(f, pulse_envelope(p, p.total_s - t), 1e-12);
  }
  EXPECT_EQ(pulse_envelope(p, -1 * ns), 0.0);
  EXPECT_EQ(pulse_envelope(p, p.total_s + 1 * ns), 0.0);
}

TEST(PulseShape, SharpEdgesApproachRectangle) {
  const PulseShape p = PulseShape::padded(120 * ns, 0.01 * ns, 40 * ns);
  EXPECT_NEAR(pulse_envelope(p, 19 * ns), 0.0, 1e-9);
  EXPECT_NEAR(pulse_envelope(p, 21 * ns), 1.0, 1e-9);
  EXPECT_NEAR(pulse_envelope(p, 139 * ns), 1.0, 1e-9);
  EXPECT_NEAR(pulse_envelope(p, 141 * ns), 0.0, 1e-9);
}

TEST(PulseShape, RejectsInvalidShape) {
  EXPECT_THROW(PulseShape::padded(0.0, 4 * ns, 40 * ns), InvalidArgument);
  EXPECT_THROW(PulseShape::padded(100 * ns, 0.0, 40 * ns), InvalidArgument);
  PulseShape p{100 * ns, 120 * ns, 4 * ns};
  EXPECT_THROW(p.validate(), InvalidArgument);
}

TEST(RateMatching, MatchedDriveIsFixedPoint) {
  const DriveConfig nominal = DriveConfig::resonant(AngularFrequency::mhz(5.04));
  const auto result = match_raman_rates(ideal, nominal, simulated_raman_oracle(ideal, {}));
  EXPECT_LT(result.initial_rms, 1e-8);
  EXPECT_LT(result.final_rms, RateMatchOptions{}.threshold);
  EXPECT_TRUE(result.converged);
  EXPECT_EQ(result.drive.omega2.value(), nominal.omega2.value());
  EXPECT_EQ(result.drive.detuning.value(), 0.0);
}

TEST(RateMatching, CorrectsAmplitudeImbalance) {
  const DriveConfig nominal = DriveConfig::resonant(AngularFrequency::mhz(5.04));
  HiddenDriveError hidden;
  hidden.omega2_scale = 0.98;
  const auto result = match_raman_rates(ideal, nominal, simulated_raman_oracle(ideal, hidden));
  const double delivered_ratio = result.drive.omega2.value() * hidden.omega2_scale / result.drive.omega1.value();
  EXPECT_NEAR(delivered_ratio, 1.0, 0.005);
  EXPECT_LT(result.final_rms, result.initial_rms);
  for (std::size_t i = 1; i < result.log.size(); ++i) EXPECT_LE(result.log[i].rms_error, result.log[i - 1].rms_error);
}

TEST(RateMatching, RestoresContrastAfterBusMisdetuning) {
  const auto r = raman_rate_matching(device);
  EXPECT_GE(r.metric("improvement_factor"), 5.0);
  EXPECT_LT(r.metric("final_rms"), r.metric("initial_rms"));
  const auto& log = r.tables.at("rate_match_log").column("rms_error");
  for (std::size_t i = 1; i < log.size(); ++i) EXPECT_LE(log[i], log[i - 1]);
}

TEST(GateTime, RankingPicksLeastCoherentError) {
  const PulseShape tmpl = PulseShape::padded(140 * ns, 4 * ns, 40 * ns);
  const std::vector<double> candidates{130 * ns, 141.5 * ns, 150 * ns};
  const auto r = rank_gate_times(tmpl, synthetic_train(141.4 * ns), candidates);
  EXPECT_DOUBLE_EQ(r.best_effective_s, 141.5 * ns);
  ASSERT_EQ(r.candidates.size(), 3u);
  EXPECT_NEAR(r.candidates[1].loss_per_gate, 0.01, 2e-3);
  EXPECT_THROW(rank_gate_times(tmpl, synthetic_train(141.4 * ns), std::vector<double>{}), InvalidArgument);
}

TEST(GateTime, SyntheticOptimumIsRecovered) {
  const PulseShape tmpl = PulseShape::padded(140 * ns, 4 * ns, 40 * ns);
  const auto r = optimize_effective_gate_time(tmpl, synthetic_train(141.4 * ns), 130 * ns, 155 * ns, 11);
  EXPECT_NEAR(r.best_effective_s / ns, 141.4, 0.2);
  EXPECT_THROW(optimize_effective_gate_time(tmpl, synthetic_train(141.4 * ns), 100 * ns, 120 * ns, 5),
               CalibrationError);
  EXPECT_THROW(optimize_effective_gate_time(tmpl, synthetic_train(141.4 * ns), 120 * ns, 100 * ns), InvalidArgument);
}

TEST(GateTime, SimulatedCandidatesFavourLongestGate) {
  const PulseShape tmpl = PulseShape::padded(140 * ns, default_sigma_s, default_padding_s);
  const auto oracle = simulated_train_oracle(device, AngularFrequency::mhz(5.0), 20);
  const std::vector<double> candidates{139 * ns, 139.5 * ns, 141.5 * ns};
  const auto r = rank_gate_times(tmpl, oracle, candidates);
  EXPECT_DOUBLE_EQ(r.best_effective_s, 141.5 * ns);
}

TEST(GateTime, UnitaryOptimumNearAreaTheorem) {
  const PulseShape tmpl = PulseShape::padded(140 * ns, 0.5 * ns, 5 * ns);
  const auto omega = AngularFrequency::mhz(5.0);
  const auto oracle = simulated_train_oracle(ideal, omega, 8);
  const auto r = optimize_effective_gate_time(tmpl, oracle, 136 * ns, 147 * ns, 12);
  EXPECT_NEAR(r.best_effective_s / ns, std::sqrt(2.0) * pi / omega.value() / ns, 0.5);
}

TEST(PiCalibration, EffectiveModelVertex) {
  const DriveConfig drive = detuned_drive();
  const double omega_r = effective_dual_rail(ideal, drive).omega_r.value();
  const ResidualOracle oracle = [omega_r](double t) { return std::pow(std::cos(omega_r * t / 2.0), 2); };
  const auto cal = calibrate_dual_rail_pi(ideal, drive, oracle);
  EXPECT_NEAR(cal.predicted_pi / ns, 360.7, 0.1);
  EXPECT_NEAR(cal.pi_duration / (pi / omega_r), 1.0, 1e-3);
  EXPECT_DOUBLE_EQ(cal.half_pi_duration, cal.pi_duration / 2.0);
  EXPECT_TRUE(cal.vertex_in_window);
  EXPECT_EQ(cal.durations.size(), 11u);
}

TEST(PiCalibration, EvenNoiseLeavesVertexUnbiased) {
  const DriveConfig drive = detuned_drive();
  const double vertex = 350 * ns;
  const ResidualOracle oracle = [vertex](double t) {
    const double x = (t - vertex) / (10 * ns);
    return 0.01 + 0.002 * x * x + 1e-4 * std::cos(3.0 * x);
  };
  PiCalibrationOptions opts;
  opts.predicted_pi = vertex;
  const auto cal = calibrate_dual_rail_pi(ideal, drive, oracle, opts);
  EXPECT_NEAR(cal.pi_duration / vertex, 1.0, 1e-9);
}

TEST(PiCalibration, RejectsConcaveResidual) {
  const ResidualOracle oracle = [](double t) { return 1.0 - std::pow((t - 360 * ns) / (100 * ns), 2); };
  EXPECT_THROW(calibrate_dual_rail_pi(ideal, detuned_drive(), oracle), CalibrationError);
  DriveConfig resonant = DriveConfig::resonant(AngularFrequency::mhz(5.0));
  EXPECT_THROW(calibrate_dual_rail_pi(ideal, resonant, oracle), InvalidArgument);
}
