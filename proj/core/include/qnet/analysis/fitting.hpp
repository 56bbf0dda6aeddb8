#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qnet {

using ResidualFunction = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct LeastSquaresOptions {
  double xtol = 1e-12;
  double ftol = 1e-14;
  int max_evaluations = 20000;
};

struct LeastSquaresResult {
  Eigen::VectorXd params;
  /// s^2 (J^T J)^{-1} with s^2 = SSR / (m - n).
  Eigen::MatrixXd covariance;
  double ssr = 0.0;
  double residual_rms = 0.0;
  int evaluations = 0;
  bool converged = false;

  double stderr_of(int i) const;
};

/// Levenberg-Marquardt with central-difference Jacobian.
LeastSquaresResult levenberg_marquardt(const ResidualFunction& residuals, const Eigen::VectorXd& x0, int n_residuals,
                                       const LeastSquaresOptions& options = {});

/// Peak of the power spectrum of the mean-removed signal over angular
/// frequencies in [w_min, w_max], refined by a parabola through the peak.
/// Works on non-uniform grids.
double dominant_angular_frequency(std::span<const double> t, std::span<const double> y, double w_min, double w_max,
                                  int n_grid = 4000);

struct ExponentialFit {
  double amplitude = 0.0;
  /// Decay rate in 1/s, constrained >= 0.
  double rate = 0.0;
  double offset = 0.0;
  double rate_stderr = 0.0;
  double residual_rms = 0.0;
  bool with_offset = false;
  double time_constant() const;
};

/// y = A e^{-rate t} (+ C). The rate is parameterised as a square so it
/// cannot go negative.
ExponentialFit fit_exponential(std::span<const double> t, std::span<const double> y, bool with_offset);

struct DampedCosineFit {
  double offset = 0.0;
  double amplitude = 0.0;
  double rate = 0.0;
  double omega = 0.0;
  double phase = 0.0;
  double omega_stderr = 0.0;
  double residual_rms = 0.0;
};

/// y = C + A e^{-rate t} cos(omega t + phi), seeded from the periodogram.
DampedCosineFit fit_damped_cosine(std::span<const double> t, std::span<const double> y, double w_min, double w_max);

/// Least-squares polynomial coefficients c0 + c1 x + ... + cd x^d.
Eigen::VectorXd polyfit(std::span<const double> x, std::span<const double> y, int degree);

}  // namespace qnet
