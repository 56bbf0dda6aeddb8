#include "qnet/tuneup/beam_splitter.hpp"

#include <cmath>
#include <numbers>

#include "qnet/util/errors.hpp"

namespace qnet {

double beam_splitter_angle(AngularFrequency omega, AngularFrequency detuning) {
  const double w = omega.value(), d = detuning.value();
  return 0.5 * std::numbers::pi * (1.0 - d / std::sqrt(2.0 * w * w + d * d));
}

double beam_splitter_time(AngularFrequency omega, AngularFrequency detuning) {
  const double w = omega.value(), d = detuning.value();
  return 2.0 * std::numbers::pi / std::sqrt(2.0 * w * w + d * d);
}

BeamSplitterPlan plan_beam_splitter(AngularFrequency omega, int n) {
  if (n < 1) throw InvalidArgument("plan_beam_splitter: N must be >= 1");
  if (!(omega.value() > 0.0)) throw InvalidArgument("plan_beam_splitter: Omega must be positive");
  // Delta / sqrt(2 Omega^2 + Delta^2) = c with c = 1 - 1/N.
  const double c = 1.0 - 1.0 / n;
  const double delta = c * std::numbers::sqrt2 * omega.value() / std::sqrt(1.0 - c * c);
  BeamSplitterPlan plan;
  plan.omega = omega;
  plan.n = n;
  plan.detuning = AngularFrequency::rad_per_s(delta);
  plan.theta = std::numbers::pi / (2.0 * n);
  plan.tau_bs = beam_splitter_time(omega, plan.detuning);
  plan.tau_swap = n * plan.tau_bs;
  return plan;
}

}  // namespace qnet
