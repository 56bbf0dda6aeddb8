#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qnet {

/// Damped swap oscillation
///   P(t) = P0 [e^{-t/tau} cos^2(W t / (2 sqrt2) + phi) + (1 - e^{-t/tau}) / 2]^2,
///   W = Omega sqrt(1 - (2 / (sqrt2 Omega tau))^2).
/// Angular frequencies in rad/s, times in seconds.
struct SwapFit {
  double omega = 0.0;
  double omega_tilde = 0.0;
  double tau = 0.0;
  double phase = 0.0;
  double p0 = 0.0;
  /// Covariance of (omega, decay rate 1/tau, phase, p0).
  Eigen::Matrix4d covariance = Eigen::Matrix4d::Zero();
  double residual_rms = 0.0;
  bool tau_infinite = false;

  double omega_stderr() const;
  double tau_stderr() const;
  /// Full oscillation period 2 sqrt2 pi / W of the populations.
  double period() const;
  /// tau_SWAP = sqrt2 pi / Omega.
  double swap_time() const;
};

double effective_omega(double omega, double tau);
double swap_population_model(double t, double omega, double tau, double phase, double p0);

/// Nonlinear least-squares fit; needs at least four oscillation periods with
/// eight samples per period. Throws FitError on failure or an overdamped result.
SwapFit fit_swap_decay(std::span<const double> times, std::span<const double> populations);

/// Envelope-ratio convention tau_SWAP / tau.
double loss_per_swap(const SwapFit& fit);

}  // namespace qnet
