#include "qnet/analysis/gate_train.hpp"

#include <cmath>

#include "qnet/analysis/fitting.hpp"
#include "qnet/util/errors.hpp"

namespace qnet {

GateTrainFit fit_gate_train(std::span<const double> gate_counts, std::span<const double> populations) {
  if (gate_counts.size() != populations.size()) throw FitError("fit_gate_train: length mismatch");
  if (gate_counts.size() < 5) throw FitError("fit_gate_train: need at least five points");
  const std::size_t n = populations.size();
  double first = 0.0, second = 0.0;
  for (std::size_t i = 0; i < n / 2; ++i) first += populations[i];
  for (std::size_t i = n - n / 2; i < n; ++i) second += populations[i];
  if (second > first * (1.0 + 1e-6) && second - first > 1e-9 * static_cast<double>(n))
    throw FitError("fit_gate_train: populations do not decay with gate count");

  const ExponentialFit fit = fit_exponential(gate_counts, populations, false);
  GateTrainFit out;
  out.survival = std::exp(-fit.rate);
  out.loss_per_gate = 1.0 - out.survival;
  out.loss_stderr = out.survival * fit.rate_stderr;
  out.amplitude = fit.amplitude;
  out.residual_rms = fit.residual_rms;
  return out;
}

}  // namespace qnet
