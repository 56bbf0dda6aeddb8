#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qnet/protocols/detuned.hpp"
#include "qnet/protocols/resonant.hpp"
#include "qnet/protocols/scenario.hpp"
#include "qnet/protocols/simulation.hpp"
#include "qnet/tuneup/pulse_shape.hpp"
#include "qnet/util/errors.hpp"

using namespace qnet;

namespace {

const NetworkModel device = NetworkModel::reference_device();
const NetworkModel ideal = device.lossless();
constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

NetworkModel without_q2_loss(NetworkModel m) {
  m.q2.t1_s = m.q2.t2_ramsey_s = m.q2.t2_echo_s = inf;
  return m;
}

// Shaped pulse whose envelope area equals the continuous-drive swap time.
PulseShape area_matched_pulse(AngularFrequency omega) {
  const double target = std::sqrt(2.0) * pi / omega.value();
  PulseShape p = PulseShape::padded(target, default_sigma_s, default_padding_s);
  for (int i = 0; i < 5; ++i)
    p = PulseShape::padded(p.effective_s * target / envelope_area(p), default_sigma_s, default_padding_s);
  return p;
}

double row_value(const TraceTable& t, const std::string& key, double key_value, const std::string& column) {
  const auto& k = t.column(key);
  for (std::size_t i = 0; i < k.size(); ++i)
    if (std::abs(k[i] - key_value) < 1e-9) return t.column(column)[i];
  throw std::out_of_range("no row with " + key);
}

}  // namespace

TEST(SwapEfficiency, ReferenceDeviceSingleSwap) {
  SwapEfficiencyOptions opts;
  opts.n_max = 3;
  const auto r = swap_efficiency_sweep(device, opts);
  EXPECT_NEAR(r.metric("inefficiency_n1"), 0.0097, 0.002);
  EXPECT_EQ(r.tables.at("efficiency").rows(), 3u);
}

TEST(SwapEfficiency, LosslessIsPerfect) {
  SwapEfficiencyOptions opts;
  opts.n_max = 6;
  for (const auto& p : swap_efficiency_points(ideal, opts)) EXPECT_LT(p.inefficiency, 1e-4) << "N = " << p.n;
}

TEST(SwapEfficiency, ScheduleTradeOffWithIdealQubits) {
  SwapEfficiencyOptions opts;
  opts.omega = AngularFrequency::mhz(10.0);
  opts.bus_quality_factor = 5e5;
  opts.include_qubit_loss = false;
  opts.n_max = 20;
  const auto pts = swap_efficiency_points(device, opts);
  EXPECT_GT(pts[1].inefficiency, pts[0].inefficiency);
  for (std::size_t i = 2; i < pts.size(); ++i) EXPECT_LT(pts[i].inefficiency, pts[i - 1].inefficiency);
  opts.qubit_coherence_s = -1.0;
  EXPECT_THROW(swap_efficiency_points(device, opts), InvalidArgument);
}

TEST(Chevron, ResonantLinecutIsCosineSquared) {
  ChevronOptions opts;
  opts.detunings = {AngularFrequency::mhz(-2.0), AngularFrequency{}, AngularFrequency::mhz(2.0)};
  opts.times = linear_grid(0.0, 1 * us, 101);
  const auto r = sideband_chevron(ideal, opts);
  const auto& t = r.tables.at("chevron");
  const double w = opts.omega.value();
  for (std::size_t i = 0; i < t.rows(); ++i) {
    if (t.column("detuning_mhz")[i] != 0.0) continue;
    const double time = t.column("time_ns")[i] * ns;
    EXPECT_NEAR(t.column("p_e")[i], std::pow(std::cos(w * time / 2.0), 2), 1e-9);
  }
  EXPECT_LT(r.metric("symmetry_error"), 1e-9);
}

TEST(Chevron, EnvelopeFollowsUndrivenDecay) {
  ChevronOptions opts;
  opts.detunings = {AngularFrequency{}};
  const auto r = sideband_chevron(device, opts);
  EXPECT_NEAR(r.metric("envelope_decay_us") / r.metric("expected_envelope_decay_us"), 1.0, 0.10);
}

TEST(BusLifetime, RecoversConfiguredLifetime) {
  const auto r = measure_bus_lifetime(device);
  EXPECT_NEAR(r.metric("tau_b_us"), 6.2, 0.05 * 6.2);
  EXPECT_LT(std::abs(r.metric("relative_error")), 0.02);
}

TEST(BusLifetime, LosslessBusIsFlagged) {
  const auto r = measure_bus_lifetime(device.without_bus_loss());
  EXPECT_EQ(r.metric("tau_infinite"), 1.0);
  EXPECT_TRUE(std::isinf(r.metric("tau_b_us")));
}

TEST(ResonantRaman, LossPerSwap) {
  const auto out = resonant_raman(device, DriveConfig::resonant(AngularFrequency::mhz(5.04)));
  ASSERT_TRUE(out.fit.has_value());
  EXPECT_NEAR(out.result.metric("loss_per_swap"), 0.0097, 0.001);
  EXPECT_NEAR(out.result.metric("swap_time_ns"), 140.3, 0.5);
  EXPECT_NEAR(out.result.metric("period_ns") / out.result.metric("expected_period_ns"), 1.0, 0.01);
}

TEST(ResonantRaman, BusOnlyLossDecaysAtQuarterRate) {
  const auto out = resonant_raman(device.without_qubit_loss(), DriveConfig::resonant(AngularFrequency::mhz(5.04)));
  EXPECT_NEAR(out.result.metric("tau_us") / (4.0 * 6.2), 1.0, 0.03);
}

TEST(ResonantRaman, LosslessHasInfiniteDecay) {
  const auto out = resonant_raman(ideal, DriveConfig::resonant(AngularFrequency::mhz(5.04)));
  EXPECT_EQ(out.result.metric("tau_infinite"), 1.0);
  EXPECT_LT(out.result.metric("loss_per_swap"), 1e-9);
}

TEST(ResonantRaman, ZeroDriveLeavesQubitIdle) {
  const auto out = resonant_raman(ideal, DriveConfig::resonant(AngularFrequency{}), linear_grid(0.0, 1 * us, 11));
  EXPECT_FALSE(out.fit.has_value());
  EXPECT_LT(out.result.metric("max_q1_drop"), 1e-12);
}

TEST(ResonantRaman, PopulationsAreBoundedAndConserved) {
  const auto out = resonant_raman(device, DriveConfig::resonant(AngularFrequency::mhz(5.04)));
  EXPECT_NO_THROW(check_probabilities(out.result));
  const auto& t = out.result.tables.at("populations");
  for (std::size_t i = 0; i < t.rows(); ++i) {
    const double total = t.column("p_q1")[i] + t.column("p_q2")[i] + t.column("p_bus")[i] + t.column("p_lost")[i];
    EXPECT_NEAR(total, 1.0, 1e-8);
  }
}

TEST(ResonantRaman, TruncatedBusIsReported) {
  NetworkModel m = ideal;
  m.bus.dim = 2;
  EXPECT_THROW(resonant_raman(m, DriveConfig::resonant(AngularFrequency::mhz(5.04))), TruncationError);
}

TEST(SwapTrain, ReferenceLossPerGate) {
  const auto r = pulsed_swap_train(device);
  EXPECT_GE(r.metric("loss_per_gate"), 0.009);
  EXPECT_LE(r.metric("loss_per_gate"), 0.014);
}

TEST(SwapTrain, UnitaryLimitIsNearlyLossless) {
  SwapTrainOptions opts;
  opts.pulse = area_matched_pulse(opts.omega);
  const auto r = pulsed_swap_train(ideal, opts);
  EXPECT_LT(r.metric("loss_per_gate"), 1e-3);
}

TEST(SwapTrain, ZeroGatesLeavesStateUnchanged) {
  const auto s = simulate_gate_train(device, AngularFrequency::mhz(5.0), area_matched_pulse(AngularFrequency::mhz(5.0)), 0);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_DOUBLE_EQ(s[0], 1.0);
}

TEST(StroboscopicBell, LosslessIsMaximallyEntangled) {
  const auto r = stroboscopic_bell(ideal);
  EXPECT_GT(r.metric("bell_fidelity"), 0.999);
  EXPECT_GT(r.metric("concurrence"), 0.998);
}

TEST(StroboscopicBell, AmplitudeIsTwiceCoherence) {
  const auto r = stroboscopic_bell(device);
  const auto& dm = r.tables.at("two_qubit_state");
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < dm.rows(); ++i)
    if (dm.column("row")[i] == 2 && dm.column("col")[i] == 1) {
      re = dm.column("re")[i];
      im = dm.column("im")[i];
    }
  EXPECT_NEAR(r.metric("xx_amplitude"), 2.0 * std::hypot(re, im), 1e-9);
  EXPECT_LE(r.metric("xx_amplitude"), 1.0);
  EXPECT_NO_THROW(check_probabilities(r));
}

TEST(StroboscopicBell, FidelityImprovesWithBusLifetime) {
  double last = 0.0;
  for (double tau : {2 * us, 6.2 * us, 20 * us}) {
    NetworkModel m = device;
    m.bus.lifetime_s = tau;
    const double f = stroboscopic_bell(m).metric("bell_fidelity");
    EXPECT_GT(f, last) << "tau_b = " << tau / us << " us";
    last = f;
  }
}

TEST(DetunedChevron, BusStaysWithinPerturbativeBound) {
  DetunedChevronOptions opts;
  opts.deltas = {AngularFrequency::mhz(-0.5), AngularFrequency{}, AngularFrequency::mhz(0.5)};
  const auto r = detuned_chevron(device, opts);
  EXPECT_LE(r.metric("bus_peak_population"), r.metric("bus_bound"));
  EXPECT_NEAR(r.metric("bell_fidelity_half_swap"), 0.98, 0.015);
  EXPECT_LT(r.metric("swap_time_ns"), 1000.0);
  EXPECT_NO_THROW(check_probabilities(r));
}

TEST(DualRail, LogicalRelaxationOutlivesPhysicalQubits) {
  DualRailOptions opts;
  opts.kind = DualRailKind::T1;
  const auto r = dual_rail_experiment(device, opts);
  EXPECT_GE(r.metric("logical_t1_us"), 10.0 * r.metric("min_physical_t1_us"));
  EXPECT_NEAR(r.metric("success_decay_us") / r.metric("expected_success_decay_us"), 1.0, 0.15);
  EXPECT_NO_THROW(check_probabilities(r));
}

TEST(DualRail, RamseyFringeTracksFrame) {
  DualRailOptions opts;
  opts.kind = DualRailKind::Ramsey;
  const auto r = dual_rail_experiment(device, opts);
  EXPECT_NEAR(r.metric("fringe_frequency_mhz") / r.metric("frame_detuning_mhz"), 1.0, 0.01);
}

TEST(DualRail, SameSeedIsReproducible) {
  DualRailOptions opts;
  opts.kind = DualRailKind::Echo;
  opts.bootstrap_resamples = 0;
  const auto a = dual_rail_experiment(device, opts);
  const auto b = dual_rail_experiment(device, opts);
  EXPECT_EQ(a.tables.at("dual_rail").column("p_logical"), b.tables.at("dual_rail").column("p_logical"));
  opts.seed = 99;
  const auto c = dual_rail_experiment(device, opts);
  EXPECT_NE(a.tables.at("dual_rail").column("p_logical"), c.tables.at("dual_rail").column("p_logical"));
}

TEST(DualRail, PiCalibrationVertexInWindow) {
  const auto r = dual_rail_pi_calibration(device);
  EXPECT_EQ(r.metric("vertex_in_window"), 1.0);
  EXPECT_GT(r.metric("curvature"), 0.0);
  EXPECT_NEAR(r.metric("pi_duration_ns") / (dual_rail_pi_duration(detuned_reference_drive()) / ns), 1.0, 0.02);
}

TEST(CrossKerr, RecoversConfiguredShift) {
  const auto r = cross_kerr_ramsey(device);
  EXPECT_NEAR(r.metric("chi_khz"), 8.0, 0.4);
}

TEST(CrossKerr, PhaseAccumulatesLinearly) {
  const NetworkModel m = without_q2_loss(device);
  const auto r = cross_kerr_ramsey(m);
  const auto& t = r.tables.at("ramsey");
  const double dphi = row_value(t, "delay_us", 4.0, "phase_e_rad") - row_value(t, "delay_us", 4.0, "phase_g_rad");
  EXPECT_NEAR(std::abs(dphi), two_pi * 8e3 * 4 * us, 1e-3);
}

TEST(CrossKerr, ZeroShiftGivesNoSplitting) {
  NetworkModel m = device;
  m.chi.q1_q2 = AngularFrequency{};
  const auto r = cross_kerr_ramsey(m);
  EXPECT_NEAR(r.metric("fringe_difference_khz"), 0.0, 1e-6);
  EXPECT_NEAR(r.metric("chi_khz"), 0.0, 1e-6);
}

TEST(Spectroscopy, ResonanceFollowsStarkModel) {
  const auto r = sideband_spectroscopy(device);
  EXPECT_LE(r.metric("max_resonance_error_mhz"), 0.5 * r.metric("grid_step_mhz") + 1e-9);
  EXPECT_NO_THROW(check_probabilities(r));
}
