#include "qnet/tuneup/calibration.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "qnet/analysis/fitting.hpp"
#include "qnet/analysis/gate_train.hpp"
#include "qnet/model/hamiltonians.hpp"
#include "qnet/quantum/lindblad.hpp"
#include "qnet/util/errors.hpp"

namespace qnet {

namespace {

PopulationRecord model_populations(const NetworkModel& model, const DriveConfig& drive, std::span<const double> times) {
  const HilbertSpace space = model.space();
  const TimeDependentHamiltonian H = build_raman_hamiltonian(model, drive);
  std::vector<double> grid{0.0};
  grid.insert(grid.end(), times.begin(), times.end());
  const Trajectory traj =
      evolve_lindblad(H, collapse_operators(model), DensityMatrix::basis(space, {1, 0, 0}), grid);
  const std::vector<double> p1 = traj.observe(number(space, "q1"));
  const std::vector<double> p2 = traj.observe(number(space, "q2"));
  return {std::vector<double>(p1.begin() + 1, p1.end()), std::vector<double>(p2.begin() + 1, p2.end())};
}

double rms_mismatch(const PopulationRecord& measured, const PopulationRecord& expected) {
  if (measured.p_q1.size() != expected.p_q1.size() || measured.p_q2.size() != expected.p_q2.size())
    throw CalibrationError("oracle returned the wrong number of populations");
  double sum = 0.0;
  for (std::size_t i = 0; i < expected.p_q1.size(); ++i) {
    sum += std::pow(measured.p_q1[i] - expected.p_q1[i], 2);
    sum += std::pow(measured.p_q2[i] - expected.p_q2[i], 2);
  }
  return std::sqrt(sum / static_cast<double>(2 * expected.p_q1.size()));
}

using DriveVector = std::array<double, 4>;

DriveVector to_vector(const DriveConfig& d) {
  return {d.detuning.value(), d.relative_detuning.value(), d.omega1.value(), d.omega2.value()};
}

DriveConfig from_vector(const DriveConfig& base, const DriveVector& v) {
  DriveConfig d = base;
  d.detuning = AngularFrequency::rad_per_s(v[0]);
  d.relative_detuning = AngularFrequency::rad_per_s(v[1]);
  d.omega1 = AngularFrequency::rad_per_s(std::max(v[2], 0.0));
  d.omega2 = AngularFrequency::rad_per_s(std::max(v[3], 0.0));
  return d;
}

RateMatchLogEntry log_entry(int iteration, const DriveVector& v, double rms) {
  const double to_mhz = 1e-6 / two_pi;
  return {iteration, v[0] * to_mhz, v[1] * to_mhz, v[2] * to_mhz, v[3] * to_mhz, rms};
}

}  // namespace

RateMatchResult match_raman_rates(const NetworkModel& model, const DriveConfig& initial, const PopulationOracle& oracle,
                                  const RateMatchOptions& options) {
  if (options.checkpoints < 1) throw InvalidArgument("match_raman_rates: need at least one checkpoint");
  const double omega_nominal = 0.5 * (initial.omega1.value() + initial.omega2.value());
  if (!(omega_nominal > 0.0)) throw InvalidArgument("match_raman_rates: nominal sideband rate must be positive");
  const double tau_swap = std::numbers::sqrt2 * std::numbers::pi / omega_nominal;
  std::vector<double> times;
  for (int k = 1; k <= options.checkpoints; ++k) times.push_back(k * tau_swap);
  const PopulationRecord expected = model_populations(model, initial, times);

  auto evaluate = [&](const DriveVector& v) { return rms_mismatch(oracle(from_vector(initial, v), times), expected); };

  RateMatchResult result;
  DriveVector x = to_vector(initial);
  double rms = evaluate(x);
  result.initial_rms = rms;
  result.log.push_back(log_entry(0, x, rms));

  const DriveVector initial_steps{options.detuning_step.value(), options.detuning_step.value(),
                                  options.amplitude_step_fraction * omega_nominal,
                                  options.amplitude_step_fraction * omega_nominal};
  DriveVector steps = initial_steps;
  int iteration = 0;
  bool converged = rms < options.threshold;
  while (!converged && iteration < options.max_iterations) {
    ++iteration;
    bool improved = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (double sign : {1.0, -1.0}) {
        DriveVector trial = x;
        trial[i] += sign * steps[i];
        const double r = evaluate(trial);
        if (r < rms) {
          x = trial;
          rms = r;
          improved = true;
          break;
        }
      }
    }
    result.log.push_back(log_entry(iteration, x, rms));
    if (!improved)
      for (auto& s : steps) s *= 0.5;
    if (rms < options.threshold) converged = true;
    bool tiny = true;
    for (std::size_t i = 0; i < steps.size(); ++i) tiny = tiny && steps[i] < options.min_step_fraction * initial_steps[i];
    if (tiny) converged = true;
  }
  result.drive = from_vector(initial, x);
  result.final_rms = rms;
  result.iterations = iteration;
  result.converged = converged;
  return result;
}

GateTimeResult rank_gate_times(const PulseShape& pulse_template, const TrainOracle& oracle,
                               std::span<const double> candidates) {
  if (candidates.empty()) throw InvalidArgument("rank_gate_times: no candidates");
  pulse_template.validate();
  const double padding = pulse_template.total_s - pulse_template.effective_s;
  GateTimeResult result;
  double best = std::numeric_limits<double>::infinity();
  for (double t_eff : candidates) {
    const PulseShape pulse = PulseShape::padded(t_eff, pulse_template.sigma_s, padding);
    const std::vector<double> s = oracle(pulse);
    std::vector<double> k(s.size());
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = static_cast<double>(i);
    const GateTrainFit fit = fit_gate_train(k, s);
    result.candidates.push_back({t_eff, fit.residual_rms, fit.loss_per_gate});
    if (fit.residual_rms < best) {
      best = fit.residual_rms;
      result.best_effective_s = t_eff;
    }
  }
  return result;
}

GateTimeResult optimize_effective_gate_time(const PulseShape& pulse_template, const TrainOracle& oracle, double t_min,
                                            double t_max, int n_grid) {
  if (!(t_max > t_min) || t_min <= 0.0 || n_grid < 3) throw InvalidArgument("optimize_effective_gate_time: bad range");
  std::vector<double> grid;
  for (int i = 0; i < n_grid; ++i) grid.push_back(t_min + (t_max - t_min) * i / (n_grid - 1));
  GateTimeResult result = rank_gate_times(pulse_template, oracle, grid);
  const auto& c = result.candidates;
  std::size_t best = 0;
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i].residual_rms < c[best].residual_rms) best = i;
  if (best == 0 || best == c.size() - 1)
    throw CalibrationError("optimize_effective_gate_time: no minimum inside the search range");

  const std::array<double, 3> xs{c[best - 1].effective_s, c[best].effective_s, c[best + 1].effective_s};
  const std::array<double, 3> ys{c[best - 1].residual_rms, c[best].residual_rms, c[best + 1].residual_rms};
  const Eigen::VectorXd q = polyfit(xs, ys, 2);
  result.best_effective_s = c[best].effective_s;
  if (q(2) > 0.0) {
    const double vertex = -q(1) / (2.0 * q(2));
    if (vertex > xs[0] && vertex < xs[2]) {
      const double v[1] = {vertex};
      const GateTimeResult refined = rank_gate_times(pulse_template, oracle, v);
      result.candidates.push_back(refined.candidates.front());
      if (refined.candidates.front().residual_rms < c[best].residual_rms) result.best_effective_s = vertex;
    }
  }
  return result;
}

PiCalibration calibrate_dual_rail_pi(const NetworkModel& model, const DriveConfig& drive, const ResidualOracle& oracle,
                                     const PiCalibrationOptions& options) {
  if (drive.relative_detuning.value() != 0.0) throw InvalidArgument("calibrate_dual_rail_pi: needs delta = 0");
  if (drive.detuning.value() == 0.0) throw InvalidArgument("calibrate_dual_rail_pi: needs the detuned regime");
  if (options.points < 3) throw InvalidArgument("calibrate_dual_rail_pi: need at least three points");
  PiCalibration out;
  out.predicted_pi =
      options.predicted_pi ? *options.predicted_pi : std::numbers::pi / effective_dual_rail(model, drive).omega_r.value();
  const double lo = out.predicted_pi * (1.0 - options.window_fraction);
  const double hi = out.predicted_pi * (1.0 + options.window_fraction);
  for (int i = 0; i < options.points; ++i) {
    const double d = lo + (hi - lo) * i / (options.points - 1);
    out.durations.push_back(d);
    out.residuals.push_back(oracle(d));
  }
  // Fit in units of the predicted duration for conditioning.
  std::vector<double> x(out.durations);
  for (double& v : x) v = v / out.predicted_pi - 1.0;
  const Eigen::VectorXd c = polyfit(x, out.residuals, 2);
  if (!(c(2) > 0.0)) throw CalibrationError("calibrate_dual_rail_pi: fitted curvature is not positive");
  const double vertex = -c(1) / (2.0 * c(2));
  out.pi_duration = out.predicted_pi * (1.0 + vertex);
  out.half_pi_duration = 0.5 * out.pi_duration;
  out.coefficients = Eigen::Vector3d(c(0), c(1), c(2));
  out.vertex_in_window = out.pi_duration >= lo && out.pi_duration <= hi;
  return out;
}

}  // namespace qnet
