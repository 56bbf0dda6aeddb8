#pragma once

#include <functional>

namespace qnet {

/// Tanh flat-top pulse of total length T whose area equals t_eff.
struct PulseShape {
  double total_s = 0.0;
  double effective_s = 0.0;
  double sigma_s = 0.0;

  /// Pulse with T = t_eff + padding.
  static PulseShape padded(double effective_s, double sigma_s, double padding_s);
  void validate() const;
  /// Rise offset t~ = (T - t_eff)/2.
  double rise_offset() const { return 0.5 * (total_s - effective_s); }
};

/// f(t) = [1 + tanh(2(t - t~)/sigma) tanh(2(T - t~ - t)/sigma)] / 2 on [0, T], zero outside.
double pulse_envelope(const PulseShape& p, double t);
std::function<double(double)> shaped_envelope(const PulseShape& p);
/// Numerical integral of the envelope over [0, T].
double envelope_area(const PulseShape& p);

}  // namespace qnet
