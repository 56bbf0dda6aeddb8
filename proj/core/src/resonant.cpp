#include "qnet/protocols/resonant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <unsupported/Eigen/KroneckerProduct>

#include "qnet/analysis/entanglement.hpp"
#include "qnet/analysis/fitting.hpp"
#include "qnet/analysis/gate_train.hpp"
#include "qnet/analysis/readout.hpp"
#include "qnet/model/hamiltonians.hpp"
#include "qnet/protocols/oracles.hpp"
#include "qnet/protocols/simulation.hpp"
#include "qnet/quantum/states.hpp"
#include "qnet/tuneup/beam_splitter.hpp"
#include "qnet/util/errors.hpp"
#include "qnet/util/parallel.hpp"

namespace qnet {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double sqrt2 = std::numbers::sqrt2;

double to_ns(double s) { return s / ns; }
double to_us(double s) { return s / us; }
double to_mhz(double w) { return w / (two_pi * 1e6); }

std::vector<double> scaled(std::span<const double> v, double factor) {
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x *= factor;
  return out;
}

std::vector<double> sum(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

/// Decay time of total excitation; infinite when the fitted rate vanishes.
double total_excitation_decay(std::span<const double> t, std::span<const double> y) {
  const ExponentialFit fit = fit_exponential(t, y, false);
  return fit.rate * (t.back() - t.front()) < 1e-6 ? std::numeric_limits<double>::infinity() : 1.0 / fit.rate;
}

}  // namespace

// ---- Swap efficiency -------------------------------------------------------

std::vector<SwapEfficiencyPoint> swap_efficiency_points(const NetworkModel& model, const SwapEfficiencyOptions& options) {
  if (options.n_max < 1) throw InvalidArgument("swap_efficiency_sweep: N_max must be >= 1");
  NetworkModel m = model;
  if (options.bus_quality_factor) m = m.with_bus_quality_factor(*options.bus_quality_factor);
  if (options.qubit_coherence_s) {
    if (!(*options.qubit_coherence_s > 0.0)) throw InvalidArgument("swap_efficiency_sweep: qubit coherence must be positive");
    for (QubitSpec* q : {&m.q1, &m.q2}) q->t1_s = q->t2_ramsey_s = q->t2_echo_s = *options.qubit_coherence_s;
  }
  if (!options.include_qubit_loss) m = m.without_qubit_loss();
  const NetworkObservables obs(m.space());
  const DensityMatrix rho0 = excited_state(m, 1);

  return parallel_map<SwapEfficiencyPoint>(static_cast<std::size_t>(options.n_max), [&](std::size_t i) {
    const BeamSplitterPlan plan = plan_beam_splitter(options.omega, static_cast<int>(i) + 1);
    DriveConfig drive = DriveConfig::resonant(options.omega);
    drive.detuning = plan.detuning;
    const std::vector<double> times = linear_grid(0.0, plan.tau_swap, 41);
    const Trajectory traj = simulate_raman(m, drive, rho0, times);
    return SwapEfficiencyPoint{plan.n, plan.detuning, plan.tau_swap,
                               1.0 - expectation_real(traj.final_state(), obs.n2)};
  });
}

ScenarioResult swap_efficiency_sweep(const NetworkModel& model, const SwapEfficiencyOptions& options) {
  const auto points = swap_efficiency_points(model, options);
  ScenarioResult r;
  r.name = "swap_efficiency_sweep";
  TraceTable t;
  std::vector<double> n, det, tau, ineff;
  for (const auto& p : points) {
    n.push_back(p.n);
    det.push_back(p.detuning.in_mhz());
    tau.push_back(to_ns(p.tau_swap_s));
    ineff.push_back(p.inefficiency);
  }
  t.add_column("n", n);
  t.add_column("detuning_mhz", det);
  t.add_column("tau_swap_ns", tau);
  t.add_column("inefficiency", ineff);
  r.tables["efficiency"] = std::move(t);

  const auto best = std::min_element(points.begin(), points.end(),
                                     [](const auto& a, const auto& b) { return a.inefficiency < b.inefficiency; });
  r.set_metric("inefficiency_n1", points.front().inefficiency);
  r.set_metric("tau_swap_n1_ns", to_ns(points.front().tau_swap_s));
  r.set_metric("best_n", best->n);
  r.set_metric("best_inefficiency", best->inefficiency);
  r.set_metric("best_tau_swap_ns", to_ns(best->tau_swap_s));
  return r;
}

// ---- Single sideband -------------------------------------------------------

ScenarioResult sideband_chevron(const NetworkModel& model, const ChevronOptions& options) {
  std::vector<AngularFrequency> dets = options.detunings;
  if (dets.empty())
    for (double f : linear_grid(-10.0, 10.0, 41)) dets.push_back(AngularFrequency::mhz(f));
  const std::vector<double> times = options.times.empty() ? linear_grid(0.0, 4 * us, 801) : options.times;
  const HilbertSpace space = model.space();
  const Operator nq = number(space, qubit_label(options.qubit));
  const Operator nb = number(space, bus_label);
  const std::vector<Operator> collapse = collapse_operators(model);
  const DensityMatrix rho0 = excited_state(model, options.qubit);

  struct Line {
    std::vector<double> pe, pb;
  };
  const auto lines = parallel_map<Line>(dets.size(), [&](std::size_t i) {
    const TimeDependentHamiltonian H =
        build_sideband_hamiltonian(model, options.qubit, options.omega, dets[i], {SidebandFrame::Static, 0.0, std::nullopt});
    const Trajectory traj = evolve_static(H.static_part(), collapse, rho0, times);
    check_truncation(traj.states);
    return Line{traj.observe(nq), traj.observe(nb)};
  });

  ScenarioResult r;
  r.name = "sideband_chevron";
  TraceTable t;
  std::vector<double> cd, ct, cpe, cpb;
  for (std::size_t i = 0; i < dets.size(); ++i)
    for (std::size_t k = 0; k < times.size(); ++k) {
      cd.push_back(dets[i].in_mhz());
      ct.push_back(to_ns(times[k]));
      cpe.push_back(lines[i].pe[k]);
      cpb.push_back(lines[i].pb[k]);
    }
  t.add_column("detuning_mhz", cd);
  t.add_column("time_ns", ct);
  t.add_column("p_e", cpe);
  t.add_column("p_bus", cpb);
  r.tables["chevron"] = std::move(t);

  double asym = 0.0;
  for (std::size_t i = 0; i < dets.size(); ++i)
    for (std::size_t j = 0; j < dets.size(); ++j)
      if (std::abs(dets[i].value() + dets[j].value()) <= 1e-9 * std::max(1.0, std::abs(dets[i].value())))
        for (std::size_t k = 0; k < times.size(); ++k) asym = std::max(asym, std::abs(lines[i].pe[k] - lines[j].pe[k]));
  r.set_metric("symmetry_error", asym);

  const QubitSpec& q = model.qubit(options.qubit);
  r.set_metric("expected_envelope_decay_us", to_us(2.0 / (1.0 / q.t1_s + 1.0 / model.bus.lifetime_s)));
  for (std::size_t i = 0; i < dets.size(); ++i) {
    if (dets[i].value() != 0.0) continue;
    r.set_metric("envelope_decay_us", to_us(total_excitation_decay(times, sum(lines[i].pe, lines[i].pb))));
  }
  return r;
}

ScenarioResult measure_bus_lifetime(const NetworkModel& model, const BusLifetimeOptions& options) {
  if (!(options.omega.value() > 0.0)) throw InvalidArgument("measure_bus_lifetime: sideband rate must be positive");
  std::vector<double> holds = options.holds.empty() ? linear_grid(0.0, 20 * us, 41) : options.holds;
  if (holds.size() < 4) throw InvalidArgument("measure_bus_lifetime: need at least four hold times");
  const HilbertSpace space = model.space();
  const std::vector<Operator> collapse = collapse_operators(model);
  const TimeDependentHamiltonian H = build_sideband_hamiltonian(model, 1, options.omega, AngularFrequency{});
  const Channel swap = static_channel(H.static_part(), collapse, pi / options.omega.value());
  const DensityMatrix loaded = swap.apply(excited_state(model, 1));

  std::vector<double> grid = holds;
  const bool prepend = grid.front() != 0.0;
  if (prepend) grid.insert(grid.begin(), 0.0);
  const Trajectory idle = evolve_static(Operator::zero(space), collapse, loaded, grid);
  check_truncation(idle.states);
  const Operator n1 = number(space, "q1");
  std::vector<double> p;
  for (std::size_t i = prepend ? 1 : 0; i < idle.states.size(); ++i)
    p.push_back(expectation_real(swap.apply(idle.states[i]), n1));

  ScenarioResult r;
  r.name = "bus_lifetime";
  TraceTable t;
  t.add_column("hold_us", scaled(holds, 1.0 / us));
  t.add_column("p_q1", p);
  r.tables["bus_lifetime"] = std::move(t);

  const ExponentialFit fit = fit_exponential(holds, p, true);
  const double span = holds.back() - holds.front();
  // Flat when the fitted decay changes the returned population by less than 1e-4 over the window.
  const bool infinite = fit.rate * span < 1e-3 || std::abs(fit.amplitude) * -std::expm1(-fit.rate * span) < 1e-4;
  r.set_metric("tau_infinite", infinite ? 1.0 : 0.0);
  r.set_metric("configured_tau_b_us", to_us(model.bus.lifetime_s));
  if (infinite) {
    r.set_metric("tau_b_us", std::numeric_limits<double>::infinity());
    r.notes.push_back("returned population is flat; bus lifetime unresolved by the hold window");
  } else {
    const double tau = 1.0 / fit.rate;
    r.set_metric("tau_b_us", to_us(tau), to_us(fit.rate_stderr * tau * tau));
    r.set_metric("relative_error", tau / model.bus.lifetime_s - 1.0);
  }
  return r;
}

// ---- Resonant Raman --------------------------------------------------------

ResonantRamanResult resonant_raman(const NetworkModel& model, const DriveConfig& drive, std::vector<double> times) {
  if (times.empty()) times = linear_grid(0.0, 10 * us, 2001);
  const NetworkObservables obs(model.space());
  const DensityMatrix rho0 = excited_state(model, 1);
  const Trajectory traj = simulate_raman(model, drive, rho0, times);

  ResonantRamanResult out;
  ScenarioResult& r = out.result;
  r.name = "resonant_raman";
  const std::vector<double> p1 = traj.observe(obs.n1), p2 = traj.observe(obs.n2);
  TraceTable t;
  t.add_column("time_ns", scaled(times, 1.0 / ns));
  t.add_column("p_q1", p1);
  t.add_column("p_q2", p2);
  t.add_column("p_bus", traj.observe(obs.nb));
  t.add_column("p_lost", traj.observe(obs.vacuum));
  r.tables["populations"] = std::move(t);

  const double omega = 0.5 * (drive.omega1.value() + drive.omega2.value());
  if (omega == 0.0) {
    double drift = 0.0;
    for (double v : p1) drift = std::max(drift, 1.0 - v);
    r.set_metric("max_q1_drop", drift);
    r.notes.push_back("sideband rates are zero; no exchange dynamics");
    return out;
  }

  const SwapFit fit = fit_swap_decay(times, p1);
  out.fit = fit;
  r.set_metric("omega_mhz", to_mhz(fit.omega), to_mhz(fit.omega_stderr()));
  r.set_metric("omega_tilde_mhz", to_mhz(fit.omega_tilde));
  r.set_metric("period_ns", to_ns(fit.period()));
  r.set_metric("expected_period_ns", to_ns(2.0 * sqrt2 * pi / omega));
  r.set_metric("swap_time_ns", to_ns(fit.swap_time()));
  r.set_metric("tau_infinite", fit.tau_infinite ? 1.0 : 0.0);
  r.set_metric("tau_us", to_us(fit.tau), fit.tau_infinite ? std::nullopt : std::optional(to_us(fit.tau_stderr())));
  r.set_metric("phase_rad", fit.phase);
  r.set_metric("p0", fit.p0);
  r.set_metric("fit_residual_rms", fit.residual_rms);
  r.set_metric("loss_per_swap_ratio", loss_per_swap(fit));

  const double tau_swap = sqrt2 * pi / omega;
  const std::vector<double> at_swap{0.0, tau_swap};
  const Trajectory swap = simulate_raman(model, drive, rho0, at_swap);
  const double end_to_end = 1.0 - expectation_real(swap.final_state(), obs.n2);
  r.set_metric("loss_per_swap_end_to_end", end_to_end);
  r.set_metric("loss_per_swap", end_to_end);
  return out;
}

std::vector<double> simulate_gate_train(const NetworkModel& model, AngularFrequency omega, const PulseShape& pulse,
                                        int n_gates) {
  if (n_gates < 0) throw InvalidArgument("simulate_gate_train: negative gate count");
  pulse.validate();
  DriveConfig drive = DriveConfig::resonant(omega);
  drive.envelope1 = pulse;
  drive.envelope2 = pulse;
  const TimeDependentHamiltonian H = build_raman_hamiltonian(model, drive);
  const std::vector<Operator> collapse = collapse_operators(model);
  const NetworkObservables obs(model.space());
  DensityMatrix rho = excited_state(model, 1);
  std::vector<double> out{expectation_real(rho, obs.n1)};
  for (int k = 1; k <= n_gates; ++k) {
    rho = evolve_segment(H, collapse, rho, pulse.total_s);
    check_truncation(std::span(&rho, 1));
    out.push_back(expectation_real(rho, k % 2 ? obs.n2 : obs.n1));
  }
  return out;
}

ScenarioResult pulsed_swap_train(const NetworkModel& model, const SwapTrainOptions& options) {
  const std::vector<double> s = simulate_gate_train(model, options.omega, options.pulse, options.n_gates);
  std::vector<double> k(s.size());
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = static_cast<double>(i);
  ScenarioResult r;
  r.name = "pulsed_swap_train";
  TraceTable t;
  t.add_column("gates", k);
  t.add_column("p_target", s);
  r.tables["train"] = std::move(t);
  r.set_metric("t_eff_ns", to_ns(options.pulse.effective_s));
  r.set_metric("pulse_length_ns", to_ns(options.pulse.total_s));
  const GateTrainFit fit = fit_gate_train(k, s);
  r.set_metric("loss_per_gate", fit.loss_per_gate, fit.loss_stderr);
  r.set_metric("residual_rms", fit.residual_rms);
  r.set_metric("amplitude", fit.amplitude);
  return r;
}

ScenarioResult gate_time_optimization(const NetworkModel& model, const GateTimeOptions& options) {
  const PulseShape templ = PulseShape::padded(options.t_min_s, default_sigma_s, default_padding_s);
  const TrainOracle oracle = simulated_train_oracle(model, options.omega, options.n_gates);
  const GateTimeResult g = optimize_effective_gate_time(templ, oracle, options.t_min_s, options.t_max_s, options.n_grid);
  ScenarioResult r;
  r.name = "gate_time_optimization";
  std::vector<GateTimeCandidate> c = g.candidates;
  std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.effective_s < b.effective_s; });
  TraceTable t;
  std::vector<double> te, res, loss;
  for (const auto& x : c) {
    te.push_back(to_ns(x.effective_s));
    res.push_back(x.residual_rms);
    loss.push_back(x.loss_per_gate);
  }
  t.add_column("t_eff_ns", te);
  t.add_column("residual_rms", res);
  t.add_column("loss_per_gate", loss);
  r.tables["candidates"] = std::move(t);
  r.set_metric("best_t_eff_ns", to_ns(g.best_effective_s));
  r.set_metric("area_theorem_ns", to_ns(sqrt2 * pi / options.omega.value()));
  return r;
}

// ---- Stroboscopic Bell state ------------------------------------------------

namespace {

/// Sideband pi-pulse train between q1 and the bus; the target alternates between them.
double calibrate_sideband_pi(const NetworkModel& model, AngularFrequency omega, double sigma, double padding) {
  const HilbertSpace space = model.space();
  const std::vector<Operator> collapse = collapse_operators(model);
  const Operator n1 = number(space, "q1"), nb = number(space, bus_label);
  const TrainOracle oracle = [&](const PulseShape& p) {
    const TimeDependentHamiltonian H =
        build_sideband_hamiltonian(model, 1, omega, AngularFrequency{}, {SidebandFrame::Static, 0.0, p});
    DensityMatrix rho = excited_state(model, 1);
    std::vector<double> s{1.0};
    for (int k = 1; k <= 12; ++k) {
      rho = evolve_segment(H, collapse, rho, p.total_s);
      s.push_back(expectation_real(rho, k % 2 ? nb : n1));
    }
    return s;
  };
  const double nominal = pi / omega.value();
  const GateTimeResult g = optimize_effective_gate_time(PulseShape::padded(nominal, sigma, padding), oracle,
                                                        0.9 * nominal, 1.1 * nominal, 21);
  return g.best_effective_s;
}

Eigen::Matrix2cd pauli(int which) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  if (which == 0) m << 0, 1, 1, 0;
  if (which == 1) m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

/// Fourier amplitude of a uniformly sampled 2 pi-periodic curve (last point duplicates the first).
double fourier_amplitude(std::span<const double> phases, std::span<const double> v) {
  const std::size_t n = phases.size() - 1;
  double a = 0.0, b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    a += v[i] * std::cos(phases[i]);
    b += v[i] * std::sin(phases[i]);
  }
  return 2.0 * std::hypot(a, b) / static_cast<double>(n);
}

}  // namespace

ScenarioResult stroboscopic_bell(const NetworkModel& model, const BellOptions& options) {
  if (!(options.omega.value() > 0.0)) throw InvalidArgument("stroboscopic_bell: sideband rate must be positive");
  if (options.n_phases < 8) throw InvalidArgument("stroboscopic_bell: need at least eight phases");
  double t_full = pi / options.omega.value();
  if (options.calibrate) t_full = calibrate_sideband_pi(model, options.omega, options.sigma_s, options.padding_s);
  const double t_half = 0.5 * t_full;

  const std::vector<Operator> collapse = collapse_operators(model);
  auto run_pulse = [&](int qubit, double t_eff, const DensityMatrix& rho) {
    SidebandOptions so{SidebandFrame::Static, 0.0, std::nullopt};
    double length = t_eff;
    if (options.shaped) {
      so.envelope = PulseShape::padded(t_eff, options.sigma_s, options.padding_s);
      length = so.envelope->total_s;
    }
    const TimeDependentHamiltonian H = build_sideband_hamiltonian(model, qubit, options.omega, AngularFrequency{}, so);
    return evolve_segment(H, collapse, rho, length);
  };
  DensityMatrix rho = run_pulse(1, t_half, excited_state(model, 1));
  const double bus_mid = expectation_real(rho, number(model.space(), bus_label));
  rho = run_pulse(2, t_full, rho);
  check_truncation(std::span(&rho, 1));

  const DensityMatrix rq = qubit_pair_state(rho);
  const std::vector<double> phases = linear_grid(0.0, 2.0 * pi, static_cast<std::size_t>(options.n_phases));
  const XXCurve xx = xx_correlator(rq, phases);

  // Measurement-only SPAM: each qubit's +-1 outcome has E[m|s] = alpha + beta s.
  const ReadoutModel ro = ReadoutModel::reference_device();
  auto ab = [&](int q) {
    const Eigen::Matrix2d& m = ro.qubits()[static_cast<std::size_t>(q)].matrix();
    return std::pair{m(0, 0) - m(1, 1), m(0, 0) + m(1, 1) - 1.0};
  };
  const auto [a1, b1] = ab(0);
  const auto [a2, b2] = ab(1);
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Matrix& m = rq.matrix();
  const double x1 = (m * Eigen::kroneckerProduct(pauli(0), id).eval()).trace().real();
  const double x2 = (m * Eigen::kroneckerProduct(id, pauli(0)).eval()).trace().real();
  const double y2 = (m * Eigen::kroneckerProduct(id, pauli(1)).eval()).trace().real();
  std::vector<double> spam;
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const double xphi2 = std::cos(phases[i]) * x2 + std::sin(phases[i]) * y2;
    spam.push_back(a1 * a2 + a1 * b2 * xphi2 + b1 * a2 * x1 + b1 * b2 * xx.values[i]);
  }

  ScenarioResult r;
  r.name = "stroboscopic_bell";
  TraceTable t;
  t.add_column("phase_rad", phases);
  t.add_column("xx", xx.values);
  t.add_column("xx_spam", spam);
  r.tables["xx_correlator"] = std::move(t);

  TraceTable dm;
  std::vector<double> row, col, re, im;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      row.push_back(i);
      col.push_back(j);
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  dm.add_column("row", row);
  dm.add_column("col", col);
  dm.add_column("re", re);
  dm.add_column("im", im);
  r.tables["two_qubit_state"] = std::move(dm);

  r.set_metric("bell_fidelity", bell_fidelity(rq));
  r.set_metric("concurrence", concurrence(rq));
  r.set_metric("xx_amplitude", xx.amplitude);
  r.set_metric("xx_amplitude_coherence", 2.0 * std::abs(m(two_qubit::eg, two_qubit::ge)));
  r.set_metric("xx_phase_rad", xx.phase);
  r.set_metric("xx_amplitude_spam", fourier_amplitude(phases, spam));
  r.set_metric("t_half_ns", to_ns(t_half));
  r.set_metric("t_full_ns", to_ns(t_full));
  r.set_metric("bus_population_mid", bus_mid);
  r.set_metric("bus_population_final", expectation_real(rho, number(model.space(), bus_label)));
  return r;
}

// ---- Raman rate matching ---------------------------------------------------

ScenarioResult raman_rate_matching(const NetworkModel& model, const RateMatchScenarioOptions& options) {
  const DriveConfig nominal = DriveConfig::resonant(options.omega);
  const PopulationOracle oracle =
      simulated_raman_oracle(model, {options.hidden_bus_detuning, 1.0, options.hidden_omega2_scale});
  const RateMatchResult res = match_raman_rates(model, nominal, oracle, options.match);

  ScenarioResult r;
  r.name = "raman_rate_matching";
  TraceTable t;
  std::vector<double> it, d, dd, w1, w2, rms;
  for (const auto& e : res.log) {
    it.push_back(e.iteration);
    d.push_back(e.detuning_mhz);
    dd.push_back(e.relative_detuning_mhz);
    w1.push_back(e.omega1_mhz);
    w2.push_back(e.omega2_mhz);
    rms.push_back(e.rms_error);
  }
  t.add_column("iteration", it);
  t.add_column("detuning_mhz", d);
  t.add_column("relative_detuning_mhz", dd);
  t.add_column("omega1_mhz", w1);
  t.add_column("omega2_mhz", w2);
  t.add_column("rms_error", rms);
  r.tables["rate_match_log"] = std::move(t);

  r.set_metric("initial_rms", res.initial_rms);
  r.set_metric("final_rms", res.final_rms);
  r.set_metric("improvement_factor", res.final_rms > 0.0 ? res.initial_rms / res.final_rms
                                                           : std::numeric_limits<double>::infinity());
  r.set_metric("iterations", res.iterations);
  r.set_metric("converged", res.converged ? 1.0 : 0.0);
  r.set_metric("detuning_mhz", res.drive.detuning.in_mhz());
  r.set_metric("relative_detuning_mhz", res.drive.relative_detuning.in_mhz());
  r.set_metric("omega1_mhz", res.drive.omega1.in_mhz());
  r.set_metric("omega2_mhz", res.drive.omega2.in_mhz());
  return r;
}

}  // namespace qnet
