#include "qnet/protocols/detuned.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "qnet/analysis/entanglement.hpp"
#include "qnet/analysis/fitting.hpp"
#include "qnet/analysis/bootstrap.hpp"
#include "qnet/quantum/propagator.hpp"
#include "qnet/protocols/oracles.hpp"
#include "qnet/protocols/simulation.hpp"
#include "qnet/quantum/states.hpp"
#include "qnet/tuneup/calibration.hpp"
#include "qnet/util/errors.hpp"
#include "qnet/util/parallel.hpp"

namespace qnet {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

double to_ns(double s) { return s / ns; }
double to_us(double s) { return s / us; }
double to_mhz(double w) { return w / (two_pi * 1e6); }

std::vector<double> scaled(std::span<const double> v, double factor) {
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x *= factor;
  return out;
}

double time_constant(double rate, double span) { return rate * span < 1e-6 ? inf : 1.0 / rate; }

/// States reached from rho0 after each delay of a static idle generator.
std::vector<DensityMatrix> idle_states(const Operator& H, const std::vector<Operator>& collapse,
                                       const DensityMatrix& rho0, const std::vector<double>& delays) {
  std::vector<double> grid = delays;
  const bool prepend = grid.front() != 0.0;
  if (prepend) grid.insert(grid.begin(), 0.0);
  Trajectory traj = evolve_static(H, collapse, rho0, grid);
  if (prepend) traj.states.erase(traj.states.begin());
  return traj.states;
}

void require_increasing(const std::vector<double>& v, const char* what) {
  if (v.empty()) throw InvalidArgument(std::string(what) + ": empty grid");
  if (v.front() < 0.0) throw InvalidArgument(std::string(what) + ": negative delay");
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) throw InvalidArgument(std::string(what) + ": grid must be strictly increasing");
}

}  // namespace

DriveConfig detuned_reference_drive() {
  DriveConfig d = DriveConfig::resonant(AngularFrequency::mhz(6.6));
  d.detuning = AngularFrequency::mhz(31.43);
  return d;
}

double dual_rail_pi_duration(const DriveConfig& drive) {
  const double s = exact_exchange_splitting(drive).value();
  if (!(s > 0.0)) throw InvalidArgument("dual_rail_pi_duration: no exchange between the qubits");
  return pi / s;
}

// ---- Detuned chevron -------------------------------------------------------

ScenarioResult detuned_chevron(const NetworkModel& model, const DetunedChevronOptions& options) {
  DriveConfig base = options.drive;
  base.relative_detuning = AngularFrequency{};
  if (base.detuning.value() == 0.0) throw InvalidArgument("detuned_chevron: needs a nonzero common detuning");
  std::vector<AngularFrequency> deltas = options.deltas;
  if (deltas.empty())
    for (double f : linear_grid(-2.0, 2.0, 21)) deltas.push_back(AngularFrequency::mhz(f));
  const std::vector<double> times = options.times.empty() ? linear_grid(0.0, 3 * us, 1501) : options.times;
  require_increasing(times, "detuned_chevron");
  const NetworkObservables obs(model.space());
  const DensityMatrix rho0 = excited_state(model, 1);

  struct Line {
    std::vector<double> p1, p2, pb;
  };
  auto run = [&](AngularFrequency delta) {
    DriveConfig d = base;
    d.relative_detuning = delta;
    const Trajectory traj = simulate_raman(model, d, rho0, times);
    return Line{traj.observe(obs.n1), traj.observe(obs.n2), traj.observe(obs.nb)};
  };
  const auto lines = parallel_map<Line>(deltas.size(), [&](std::size_t i) { return run(deltas[i]); });

  ScenarioResult r;
  r.name = "detuned_chevron";
  TraceTable t;
  std::vector<double> cd, ct, c1, c2, cb;
  for (std::size_t i = 0; i < deltas.size(); ++i)
    for (std::size_t k = 0; k < times.size(); ++k) {
      cd.push_back(deltas[i].in_mhz());
      ct.push_back(to_ns(times[k]));
      c1.push_back(lines[i].p1[k]);
      c2.push_back(lines[i].p2[k]);
      cb.push_back(lines[i].pb[k]);
    }
  t.add_column("delta_mhz", cd);
  t.add_column("time_ns", ct);
  t.add_column("p_q1", c1);
  t.add_column("p_q2", c2);
  t.add_column("p_bus", cb);
  r.tables["detuned_chevron"] = std::move(t);

  const Line cut = run(AngularFrequency{});
  TraceTable lt;
  lt.add_column("time_ns", scaled(times, 1.0 / ns));
  lt.add_column("p_q1", cut.p1);
  lt.add_column("p_q2", cut.p2);
  lt.add_column("p_bus", cut.pb);
  r.tables["linecut"] = std::move(lt);

  // Slow exchange only: the bus-mediated wiggle sits near Delta.
  const double span = times.back() - times.front();
  const DampedCosineFit fit =
      fit_damped_cosine(times, cut.p1, two_pi / span, 0.5 * std::abs(base.detuning.value()));
  const double w_full = fit.omega;
  const DualRailEffective eff = effective_dual_rail(model, base);
  const Eigen::SelfAdjointEigenSolver<Matrix> es(eff.hamiltonian);
  const double w_eff = es.eigenvalues()(1) - es.eigenvalues()(0);
  const double D = base.detuning.value();
  const double w_sw = base.omega1.value() * base.omega2.value() / (2.0 * D);

  r.set_metric("linecut_omega_mhz", to_mhz(w_full), to_mhz(fit.omega_stderr));
  r.set_metric("omega_r_mhz", eff.omega_r.in_mhz());
  r.set_metric("effective_model_omega_mhz", to_mhz(w_eff));
  r.set_metric("schrieffer_wolff_omega_mhz", to_mhz(w_sw));
  r.set_metric("exact_splitting_mhz", exact_exchange_splitting(base).in_mhz());
  r.set_metric("effective_to_full_ratio", w_eff / w_full);
  r.set_metric("schrieffer_wolff_to_full_ratio", w_sw / w_full);
  r.set_metric("sqrt_omega_r_delta_mhz", to_mhz(std::sqrt(w_full * std::abs(D))));
  r.set_metric("delta_over_omega", std::abs(D) / std::max(base.omega1.value(), base.omega2.value()));
  r.set_metric("perturbative_warning", eff.perturbative_warning ? 1.0 : 0.0);
  r.set_metric("swap_time_ns", to_ns(pi / w_full));

  const double t_half = 0.5 * pi / w_full;
  const std::vector<double> at_half{0.0, t_half};
  const Trajectory half = simulate_raman(model, base, rho0, at_half);
  const DensityMatrix pair = qubit_pair_state(half.final_state());
  r.set_metric("half_swap_ns", to_ns(t_half));
  r.set_metric("bell_fidelity_half_swap", bell_fidelity(pair));
  r.set_metric("concurrence_half_swap", concurrence(pair));

  r.set_metric("bus_peak_population", *std::max_element(cut.pb.begin(), cut.pb.end()));
  const double ratio = std::max(base.omega1.value(), base.omega2.value()) / D;
  r.set_metric("bus_bound", ratio * ratio);
  return r;
}

// ---- Dual-rail experiments -------------------------------------------------

const char* to_string(DualRailKind kind) {
  switch (kind) {
    case DualRailKind::T1:
      return "t1";
    case DualRailKind::Ramsey:
      return "ramsey";
    case DualRailKind::Echo:
      return "echo";
  }
  return "unknown";
}

ScenarioResult dual_rail_experiment(const NetworkModel& model, const DualRailOptions& options) {
  const TimeDependentHamiltonian Hp = build_raman_hamiltonian(model, options.drive);
  if (!Hp.is_static()) throw InvalidArgument("dual_rail_experiment: pulses must be rectangular");
  if (options.shots < 1) throw InvalidArgument("dual_rail_experiment: need at least one shot");
  if (options.readout.num_qubits() != 2) throw InvalidArgument("dual_rail_experiment: readout must cover two qubits");
  const double t_pi = options.pi_duration_s ? *options.pi_duration_s : dual_rail_pi_duration(options.drive);

  std::vector<double> delays = options.delays;
  if (delays.empty()) {
    switch (options.kind) {
      case DualRailKind::T1:
        delays = linear_grid(0.0, 40 * us, 41);
        break;
      case DualRailKind::Ramsey:
        delays = linear_grid(0.0, 2 * us, 501);
        break;
      case DualRailKind::Echo:
        delays = linear_grid(0.0, 20 * us, 41);
        break;
    }
  }
  require_increasing(delays, "dual_rail_experiment");
  if (delays.size() < 5) throw InvalidArgument("dual_rail_experiment: need at least five delays");

  const HilbertSpace space = model.space();
  const std::vector<Operator> collapse = collapse_operators(model);
  const Channel pi_pulse = static_channel(Hp.static_part(), collapse, t_pi);
  const Channel half_pulse = static_channel(Hp.static_part(), collapse, 0.5 * t_pi);
  const Operator idle = number(space, "q1") * cplx(options.frame_detuning.value());
  const DensityMatrix rho0 = excited_state(model, 1);

  std::vector<DensityMatrix> finals;
  DensityMatrix prepared;
  switch (options.kind) {
    case DualRailKind::T1: {
      prepared = pi_pulse.apply(rho0);
      finals = idle_states(idle, collapse, prepared, delays);
      break;
    }
    case DualRailKind::Ramsey: {
      prepared = half_pulse.apply(rho0);
      for (const auto& s : idle_states(idle, collapse, prepared, delays)) finals.push_back(half_pulse.apply(s));
      break;
    }
    case DualRailKind::Echo: {
      prepared = half_pulse.apply(rho0);
      const std::vector<double> halves = scaled(delays, 0.5);
      const auto first = idle_states(idle, collapse, prepared, halves);
      finals = parallel_map<DensityMatrix>(delays.size(), [&](std::size_t i) {
        const DensityMatrix flipped = pi_pulse.apply(first[i]);
        const DensityMatrix back = static_channel(idle, collapse, halves[i]).apply(flipped);
        return half_pulse.apply(back);
      });
      break;
    }
  }
  check_truncation(finals);

  using namespace two_qubit;
  const std::size_t n = delays.size();
  auto post_select = [](const Eigen::VectorXd& p, double& success, double& logical) {
    success = 1.0 - p(gg);
    if (!(success > 0.0)) throw InvalidState("dual_rail_experiment: success fraction is zero");
    logical = (p(ge) + p(ee)) / success;
  };
  auto frequencies = [&](const std::vector<long>& counts) {
    Eigen::VectorXd f(4);
    for (int k = 0; k < 4; ++k) f(k) = static_cast<double>(counts[static_cast<std::size_t>(k)]) / options.shots;
    return f;
  };

  std::vector<std::vector<long>> counts(n);
  std::vector<double> p_log(n), p_log_raw(n), p_log_exact(n), p_succ(n), p_succ_raw(n), p_succ_exact(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix m = qubit_pair_state(finals[i]).matrix();
    Eigen::VectorXd probs(4);
    for (int k = 0; k < 4; ++k) probs(k) = std::max(m(k, k).real(), 0.0);
    probs /= probs.sum();
    std::mt19937_64 rng = resample_rng(options.seed, i);
    counts[i] = sample_readout(options.readout, probs, options.shots, rng);
    post_select(correct_readout(std::span<const long>(counts[i]), options.readout), p_succ[i], p_log[i]);
    post_select(frequencies(counts[i]), p_succ_raw[i], p_log_raw[i]);
    post_select(probs, p_succ_exact[i], p_log_exact[i]);
  }

  ScenarioResult r;
  r.name = std::string("dual_rail_") + to_string(options.kind);
  TraceTable t;
  t.add_column("delay_us", scaled(delays, 1.0 / us));
  t.add_column("p_logical", p_log);
  t.add_column("p_logical_raw", p_log_raw);
  t.add_column("p_logical_exact", p_log_exact);
  t.add_column("p_success", p_succ);
  t.add_column("p_success_raw", p_succ_raw);
  t.add_column("p_success_exact", p_succ_exact);
  r.tables["dual_rail"] = std::move(t);

  const double span = delays.back() - delays.front();
  const double dt = span / static_cast<double>(n - 1);
  // Decay rate of the logical signal, or the fringe frequency for Ramsey.
  auto primary = [&](const std::vector<double>& p) {
    switch (options.kind) {
      case DualRailKind::T1:
        return fit_exponential(delays, p, false).rate;
      case DualRailKind::Ramsey:
        return fit_damped_cosine(delays, p, 4.0 * pi / span, pi / dt).omega;
      case DualRailKind::Echo:
        return fit_exponential(delays, p, true).rate;
    }
    return 0.0;
  };

  // Parametric bootstrap over the recorded shots of every delay.
  double spread = std::numeric_limits<double>::quiet_NaN();
  if (options.bootstrap_resamples > 0) {
    std::vector<double> values(static_cast<std::size_t>(options.bootstrap_resamples));
    parallel_for(values.size(), [&](std::size_t b) {
      std::mt19937_64 rng = resample_rng(options.seed ^ 0x9e3779b97f4a7c15ULL, b);
      std::vector<double> p(n);
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<long> draw(4, 0);
        long left = options.shots;
        double mass = 1.0;
        for (std::size_t k = 0; k < 3 && left > 0; ++k) {
          const double q = static_cast<double>(counts[i][k]) / options.shots;
          const double prob = mass > 0.0 ? std::clamp(q / mass, 0.0, 1.0) : 0.0;
          draw[k] = std::binomial_distribution<long>(left, prob)(rng);
          left -= draw[k];
          mass -= q;
        }
        draw[3] = left;
        double success = 0.0;
        post_select(correct_readout(std::span<const long>(draw), options.readout), success, p[i]);
      }
      try {
        values[b] = primary(p);
      } catch (const FitError&) {
        values[b] = std::numeric_limits<double>::quiet_NaN();
      }
    });
    std::vector<double> ok;
    for (double v : values)
      if (std::isfinite(v)) ok.push_back(v);
    if (ok.size() * 20 < values.size() * 19) throw FitError("dual_rail_experiment: bootstrap refits failed on more than 5% of resamples");
    double mean = 0.0;
    for (double v : ok) mean += v;
    mean /= static_cast<double>(ok.size());
    double var = 0.0;
    for (double v : ok) var += (v - mean) * (v - mean);
    spread = ok.size() > 1 ? std::sqrt(var / static_cast<double>(ok.size() - 1)) : 0.0;
    r.set_metric("bootstrap_resamples", static_cast<double>(values.size()));
  }

  r.set_metric("pi_duration_ns", to_ns(t_pi));
  r.set_metric("shots", static_cast<double>(options.shots));
  r.set_metric("min_physical_t1_us", to_us(std::min(model.q1.t1_s, model.q2.t1_s)));
  const double value = primary(p_log);
  // Uncertainty of a time constant propagated from the rate spread.
  auto tau_metric = [&](const std::string& key) {
    const double tau = time_constant(value, span);
    std::optional<double> u;
    if (std::isfinite(spread) && std::isfinite(tau)) u = to_us(tau * tau * spread);
    r.set_metric(key, to_us(tau), u);
  };
  switch (options.kind) {
    case DualRailKind::T1:
      tau_metric("logical_t1_us");
      break;
    case DualRailKind::Ramsey: {
      std::optional<double> u;
      if (std::isfinite(spread)) u = to_mhz(spread);
      r.set_metric("fringe_frequency_mhz", to_mhz(value), u);
      r.set_metric("frame_detuning_mhz", options.frame_detuning.in_mhz());
      const DampedCosineFit f = fit_damped_cosine(delays, p_log, 4.0 * pi / span, pi / dt);
      r.set_metric("logical_t2r_us", to_us(time_constant(f.rate, span)));
      break;
    }
    case DualRailKind::Echo:
      tau_metric("logical_t2e_us");
      break;
  }

  const ExponentialFit fs = fit_exponential(delays, p_succ, false);
  r.set_metric("success_decay_us", to_us(time_constant(fs.rate, span)));
  const Operator n1 = number(space, "q1"), n2 = number(space, "q2");
  const double w1 = expectation_real(prepared, n1), w2 = expectation_real(prepared, n2);
  const double loss_rate = (w1 / model.q1.t1_s + w2 / model.q2.t1_s) / (w1 + w2);
  r.set_metric("expected_success_decay_us", to_us(1.0 / loss_rate));
  bool monotone = true;
  for (std::size_t i = 1; i < n; ++i) monotone = monotone && p_succ_exact[i] <= p_succ_exact[i - 1] + 1e-12;
  r.set_metric("success_monotone", monotone ? 1.0 : 0.0);
  r.set_metric("min_success", *std::min_element(p_succ.begin(), p_succ.end()));
  return r;
}

ScenarioResult dual_rail_pi_calibration(const NetworkModel& model, const PiCalibrationScenarioOptions& options) {
  PiCalibrationOptions po;
  po.predicted_pi = options.predicted_pi_s ? *options.predicted_pi_s : dual_rail_pi_duration(options.drive);
  const PiCalibration cal =
      calibrate_dual_rail_pi(model, options.drive, simulated_dual_rail_residual(model, options.drive), po);
  ScenarioResult r;
  r.name = "dual_rail_pi_calibration";
  TraceTable t;
  t.add_column("duration_ns", scaled(cal.durations, 1.0 / ns));
  t.add_column("p_residual", cal.residuals);
  r.tables["pi_scan"] = std::move(t);
  r.set_metric("pi_duration_ns", to_ns(cal.pi_duration));
  r.set_metric("half_pi_duration_ns", to_ns(cal.half_pi_duration));
  r.set_metric("predicted_pi_ns", to_ns(cal.predicted_pi));
  r.set_metric("omega_r_pi_ns", to_ns(pi / effective_dual_rail(model, options.drive).omega_r.value()));
  r.set_metric("vertex_in_window", cal.vertex_in_window ? 1.0 : 0.0);
  r.set_metric("curvature", cal.coefficients(2));
  r.set_metric("residual_at_vertex", cal.coefficients(0) - cal.coefficients(1) * cal.coefficients(1) /
                                                              (4.0 * cal.coefficients(2)));
  return r;
}

// ---- Cross-Kerr Ramsey -----------------------------------------------------

ScenarioResult cross_kerr_ramsey(const NetworkModel& model, const CrossKerrOptions& options) {
  NetworkModel m = model;
  m.cross_kerr_enabled = true;
  std::vector<double> delays = options.delays.empty() ? linear_grid(0.0, 8 * us, 801) : options.delays;
  require_increasing(delays, "cross_kerr_ramsey");
  if (delays.size() < 16) throw InvalidArgument("cross_kerr_ramsey: need at least 16 delays");
  const double w_art = options.artificial_detuning.value();
  if (!(w_art > 0.0)) throw InvalidArgument("cross_kerr_ramsey: artificial detuning must be positive");

  const HilbertSpace space = m.space();
  const std::vector<Operator> collapse = collapse_operators(m);
  const Operator H = number(space, "q1") * cplx(w_art) + cross_kerr_terms(m);
  const double c = std::cos(pi / 4.0), s = std::sin(pi / 4.0);
  Eigen::Matrix2cd rx;
  rx << c, cplx(0, -s), cplx(0, -s), c;
  const Channel half_pi = Channel::unitary(space, embed(space, "q1", rx).matrix());
  const Operator n1 = number(space, "q1");
  const Operator sx = embed(space, "q1", (Eigen::Matrix2cd() << 0, 1, 1, 0).finished());
  const Operator sy = embed(space, "q1", (Eigen::Matrix2cd() << 0, cplx(0, -1), cplx(0, 1), 0).finished());

  struct Fringe {
    std::vector<double> p, phase;
  };
  auto run = [&](int q2_level) {
    const DensityMatrix start = half_pi.apply(DensityMatrix::basis(space, {0, q2_level, 0}));
    Fringe f;
    for (const auto& rho : idle_states(H, collapse, start, delays)) {
      f.p.push_back(expectation_real(half_pi.apply(rho), n1));
      f.phase.push_back(std::atan2(expectation_real(rho, sy), expectation_real(rho, sx)));
    }
    // Unwrap.
    for (std::size_t i = 1; i < f.phase.size(); ++i)
      f.phase[i] -= two_pi * std::round((f.phase[i] - f.phase[i - 1]) / two_pi);
    return f;
  };
  const Fringe g = run(0), e = run(1);

  ScenarioResult r;
  r.name = "cross_kerr_ramsey";
  TraceTable t;
  t.add_column("delay_us", scaled(delays, 1.0 / us));
  t.add_column("p_q1_g", g.p);
  t.add_column("p_q1_e", e.p);
  t.add_column("phase_g_rad", g.phase);
  t.add_column("phase_e_rad", e.phase);
  r.tables["ramsey"] = std::move(t);

  const double span = delays.back() - delays.front();
  const DampedCosineFit fg = fit_damped_cosine(delays, g.p, 0.5 * w_art, 1.5 * w_art);
  const DampedCosineFit fe = fit_damped_cosine(delays, e.p, 0.5 * w_art, 1.5 * w_art);
  r.set_metric("fringe_g_mhz", to_mhz(fg.omega), to_mhz(fg.omega_stderr));
  r.set_metric("fringe_e_mhz", to_mhz(fe.omega), to_mhz(fe.omega_stderr));
  r.set_metric("fringe_difference_khz", (fg.omega - fe.omega) / (two_pi * 1e3));

  // Qubit 2 relaxes during the window, which chirps the conditional phase;
  // the initial slope of a quadratic fit to the phase difference is chi.
  std::vector<double> tw, dphi, tg, pg;
  for (std::size_t i = 0; i < delays.size() && delays[i] <= delays.front() + 0.5 * span; ++i) {
    tw.push_back(delays[i] - delays.front());
    dphi.push_back(g.phase[i] - e.phase[i]);
    pg.push_back(g.phase[i]);
  }
  const double direction = polyfit(tw, pg, 1)(1) > 0.0 ? 1.0 : -1.0;
  const Eigen::VectorXd q = polyfit(tw, dphi, 2);
  const double chi = direction * q(1);
  r.set_metric("chi_khz", chi / (two_pi * 1e3));
  r.set_metric("configured_chi_khz", model.chi.q1_q2.value() / (two_pi * 1e3));
  if (model.chi.q1_q2.value() != 0.0) r.set_metric("relative_error", chi / model.chi.q1_q2.value() - 1.0);
  return r;
}

// ---- Sideband spectroscopy -------------------------------------------------

ScenarioResult sideband_spectroscopy(const NetworkModel& model, const SpectroscopyOptions& options) {
  if (!(options.omega.value() > 0.0)) throw InvalidArgument("sideband_spectroscopy: sideband rate must be positive");
  const std::vector<double> powers = options.powers.empty() ? linear_grid(0.0, 4.0, 9) : options.powers;
  std::vector<AngularFrequency> offsets = options.pump_offsets;
  if (offsets.empty())
    for (double f : linear_grid(-3.0, 3.0, 61)) offsets.push_back(AngularFrequency::mhz(f));
  const AngularFrequency base = frequency_matching(model, options.qubit);
  const HilbertSpace space = model.space();
  const Vector psi0 = basis_ket(space, {options.qubit == 1 ? 1 : 0, options.qubit == 2 ? 1 : 0, 0});
  const double duration = pi / options.omega.value();

  const auto maps = parallel_map<std::vector<double>>(powers.size(), [&](std::size_t i) {
    const AngularFrequency res = stark_shifted_resonance(options.stark, model, options.qubit, powers[i]);
    std::vector<double> p;
    for (const AngularFrequency off : offsets) {
      // Two pump photons per exchange: the sideband detuning is twice the pump offset.
      const AngularFrequency det = 2.0 * (base + off - res);
      const TimeDependentHamiltonian H =
          build_sideband_hamiltonian(model, options.qubit, options.omega, det, {SidebandFrame::Static, 0.0, std::nullopt});
      const Matrix U = (H.static_part().matrix() * cplx(0.0, -duration)).exp();
      p.push_back(std::norm(psi0.dot(U * psi0)));
    }
    return p;
  });

  ScenarioResult r;
  r.name = "sideband_spectroscopy";
  TraceTable t;
  std::vector<double> cp, co, ce;
  double worst = 0.0;
  for (std::size_t i = 0; i < powers.size(); ++i) {
    std::size_t best = 0;
    for (std::size_t k = 0; k < offsets.size(); ++k) {
      cp.push_back(powers[i]);
      co.push_back(offsets[k].in_mhz());
      ce.push_back(maps[i][k]);
      if (maps[i][k] < maps[i][best]) best = k;
    }
    const double predicted = (stark_shifted_resonance(options.stark, model, options.qubit, powers[i]) - base).in_mhz();
    worst = std::max(worst, std::abs(offsets[best].in_mhz() - predicted));
    if (i + 1 == powers.size()) {
      r.set_metric("resonance_offset_max_power_mhz", offsets[best].in_mhz());
      r.set_metric("predicted_offset_max_power_mhz", predicted);
    }
  }
  t.add_column("power", cp);
  t.add_column("pump_offset_mhz", co);
  t.add_column("p_e", ce);
  r.tables["spectroscopy"] = std::move(t);
  r.set_metric("max_resonance_error_mhz", worst);
  r.set_metric("grid_step_mhz", offsets.size() > 1 ? std::abs(offsets[1].in_mhz() - offsets[0].in_mhz()) : 0.0);
  return r;
}

}  // namespace qnet
