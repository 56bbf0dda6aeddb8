#include "qnet/analysis/swap_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qnet/analysis/fitting.hpp"
#include "qnet/util/errors.hpp"

namespace qnet {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double sqrt2 = std::numbers::sqrt2;
constexpr double inf = std::numeric_limits<double>::infinity();

// Times are fitted in microseconds so every parameter is O(1..100).
constexpr double t_scale = 1e-6;

double model_rate_form(double t, double omega, double rate, double phase, double p0) {
  const double r = 1.0 - 2.0 * rate * rate / (omega * omega);
  const double w = omega * std::sqrt(std::max(r, 0.0));
  const double e = std::exp(-rate * t);
  const double c = std::cos(w * t / (2.0 * sqrt2) + phase);
  const double inner = e * c * c + 0.5 * (1.0 - e);
  return p0 * inner * inner;
}

}  // namespace

double effective_omega(double omega, double tau) {
  if (std::isinf(tau)) return omega;
  const double r = 1.0 - std::pow(2.0 / (sqrt2 * omega * tau), 2);
  if (r < 0.0) throw FitError("effective omega is imaginary (overdamped)");
  return omega * std::sqrt(r);
}

double swap_population_model(double t, double omega, double tau, double phase, double p0) {
  return model_rate_form(t, omega, std::isinf(tau) ? 0.0 : 1.0 / tau, phase, p0);
}

double SwapFit::omega_stderr() const { return std::sqrt(std::max(covariance(0, 0), 0.0)); }

double SwapFit::tau_stderr() const {
  if (tau_infinite) return inf;
  return std::sqrt(std::max(covariance(1, 1), 0.0)) * tau * tau;
}

double SwapFit::period() const { return 2.0 * sqrt2 * pi / omega_tilde; }
double SwapFit::swap_time() const { return sqrt2 * pi / omega; }

SwapFit fit_swap_decay(std::span<const double> times, std::span<const double> populations) {
  if (times.size() != populations.size()) throw FitError("fit_swap_decay: length mismatch");
  const auto m = static_cast<int>(times.size());
  if (m < 32) throw FitError("fit_swap_decay: too few samples");
  std::vector<double> ts(times.begin(), times.end());
  for (double& t : ts) t /= t_scale;
  const std::vector<double> ys(populations.begin(), populations.end());
  const double span = ts.back() - ts.front();
  const double dt = span / (m - 1);

  // Population fundamental is W / sqrt2.
  const double w_fund = dominant_angular_frequency(ts, ys, 2.0 * 2.0 * pi / span, pi / dt);
  const double period = 2.0 * pi / w_fund;
  if (span < 4.0 * period * (1.0 - 1e-9)) throw FitError("fit_swap_decay: fewer than four oscillation periods sampled");
  if (period / dt < 8.0) throw FitError("fit_swap_decay: fewer than eight samples per period");
  const double omega0 = sqrt2 * w_fund;

  // Envelope seed: peak-to-trough per period decays like e^{-rate t}.
  double rate0 = 0.0;
  {
    std::vector<double> mid, amp;
    for (double start = ts.front(); start + period <= ts.back() + 1e-12; start += period) {
      double lo = inf, hi = -inf;
      for (int i = 0; i < m; ++i)
        if (ts[static_cast<std::size_t>(i)] >= start && ts[static_cast<std::size_t>(i)] < start + period) {
          lo = std::min(lo, ys[static_cast<std::size_t>(i)]);
          hi = std::max(hi, ys[static_cast<std::size_t>(i)]);
        }
      if (hi > lo) {
        mid.push_back(start + 0.5 * period);
        amp.push_back(std::log(hi - lo));
      }
    }
    if (mid.size() >= 2) {
      const Eigen::VectorXd c = polyfit(mid, amp, 1);
      rate0 = std::max(-c(1), 0.0);
    }
  }
  double p0_seed = 0.0;
  for (int i = 0; i < m && ts[static_cast<std::size_t>(i)] <= ts.front() + period; ++i)
    p0_seed = std::max(p0_seed, ys[static_cast<std::size_t>(i)]);

  auto residuals = [&](const Eigen::VectorXd& p) {
    Eigen::VectorXd r(m);
    const double rate = p(1) * p(1);
    for (int i = 0; i < m; ++i)
      r(i) = model_rate_form(ts[static_cast<std::size_t>(i)], p(0), rate, p(2), p(3)) - ys[static_cast<std::size_t>(i)];
    return r;
  };

  LeastSquaresResult best;
  best.ssr = inf;
  for (int k = 0; k < 8; ++k) {
    Eigen::VectorXd x0(4);
    x0 << omega0, std::sqrt(rate0), k * pi / 8.0, p0_seed;
    const LeastSquaresResult fit = levenberg_marquardt(residuals, x0, m);
    if (fit.converged && fit.ssr < best.ssr) best = fit;
  }
  if (!std::isfinite(best.ssr)) throw FitError("fit_swap_decay: least squares did not converge");

  SwapFit out;
  const double omega_us = std::abs(best.params(0));
  const double s = best.params(1);
  const double rate_us = s * s;
  if (2.0 * rate_us * rate_us > omega_us * omega_us) throw FitError("fit_swap_decay: overdamped (Omega tau < 2/sqrt2)");
  out.omega = omega_us / t_scale;
  out.tau_infinite = rate_us * span < 1e-4;
  out.tau = rate_us > 0.0 ? t_scale / rate_us : inf;
  out.omega_tilde = out.omega * std::sqrt(1.0 - 2.0 * rate_us * rate_us / (omega_us * omega_us));
  out.phase = std::remainder(best.params(2), pi);
  out.p0 = best.params(3);
  out.residual_rms = best.residual_rms;

  // Map the covariance of (omega_us, s, phase, p0) to (omega, rate, phase, p0) in SI units.
  Eigen::Matrix4d jac = Eigen::Matrix4d::Zero();
  jac(0, 0) = 1.0 / t_scale;
  jac(1, 1) = 2.0 * s / t_scale;
  jac(2, 2) = 1.0;
  jac(3, 3) = 1.0;
  out.covariance = jac * best.covariance * jac.transpose();
  return out;
}

double loss_per_swap(const SwapFit& fit) {
  if (fit.tau_infinite || std::isinf(fit.tau)) return 0.0;
  return fit.swap_time() / fit.tau;
}

}  // namespace qnet
