#include "qnet/analysis/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "qnet/util/errors.hpp"

namespace qnet {

namespace {

struct ResidualFunctor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  const ResidualFunction* f = nullptr;
  int n = 0;
  int m = 0;
  int* counter = nullptr;

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& fvec) const {
    fvec = (*f)(x);
    ++*counter;
    return 0;
  }
  int inputs() const { return n; }
  int values() const { return m; }
};

Eigen::MatrixXd central_jacobian(const ResidualFunction& f, const Eigen::VectorXd& x, int m) {
  Eigen::MatrixXd J(m, x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = 1e-6 * std::max(std::abs(x(i)), 1e-2);
    Eigen::VectorXd xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    J.col(i) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return J;
}

std::vector<double> scaled(std::span<const double> v, double s) {
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x *= s;
  return out;
}

void check_xy(std::span<const double> t, std::span<const double> y, std::size_t min_points) {
  if (t.size() != y.size()) throw FitError("fit: x and y lengths differ");
  if (t.size() < min_points) throw FitError("fit: too few points");
}

}  // namespace

double LeastSquaresResult::stderr_of(int i) const {
  const double v = covariance(i, i);
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

LeastSquaresResult levenberg_marquardt(const ResidualFunction& residuals, const Eigen::VectorXd& x0, int n_residuals,
                                       const LeastSquaresOptions& options) {
  const int n = static_cast<int>(x0.size());
  if (n_residuals < n) throw FitError("levenberg_marquardt: fewer residuals than parameters");
  int counter = 0;
  ResidualFunctor functor;
  functor.f = &residuals;
  functor.n = n;
  functor.m = n_residuals;
  functor.counter = &counter;
  Eigen::NumericalDiff<ResidualFunctor, Eigen::Central> numdiff(functor);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<ResidualFunctor, Eigen::Central>> lm(numdiff);
  lm.parameters.xtol = options.xtol;
  lm.parameters.ftol = options.ftol;
  lm.parameters.maxfev = options.max_evaluations;
  Eigen::VectorXd x = x0;
  const auto status = lm.minimize(x);

  LeastSquaresResult out;
  out.params = x;
  out.evaluations = counter;
  using S = Eigen::LevenbergMarquardtSpace::Status;
  out.converged = status != S::ImproperInputParameters && status != S::TooManyFunctionEvaluation &&
                  status != S::UserAsked && x.allFinite();
  const Eigen::VectorXd r = residuals(x);
  out.ssr = r.squaredNorm();
  out.residual_rms = std::sqrt(out.ssr / n_residuals);
  const Eigen::MatrixXd J = central_jacobian(residuals, x, n_residuals);
  const double dof = std::max(1, n_residuals - n);
  const Eigen::MatrixXd jtj = J.transpose() * J;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(jtj);
  out.covariance = cod.pseudoInverse() * (out.ssr / dof);
  return out;
}

double dominant_angular_frequency(std::span<const double> t, std::span<const double> y, double w_min, double w_max,
                                  int n_grid) {
  check_xy(t, y, 4);
  if (!(w_max > w_min) || w_min < 0.0) throw FitError("dominant_angular_frequency: bad frequency window");
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  std::vector<double> power(static_cast<std::size_t>(n_grid));
  const double dw = (w_max - w_min) / (n_grid - 1);
  for (int k = 0; k < n_grid; ++k) {
    const double w = w_min + k * dw;
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) acc += (y[i] - mean) * std::polar(1.0, -w * t[i]);
    power[static_cast<std::size_t>(k)] = std::norm(acc);
  }
  const auto it = std::max_element(power.begin(), power.end());
  const auto k = static_cast<int>(it - power.begin());
  double w = w_min + k * dw;
  if (k > 0 && k < n_grid - 1) {
    const double a = power[static_cast<std::size_t>(k - 1)], b = power[static_cast<std::size_t>(k)],
                 c = power[static_cast<std::size_t>(k + 1)];
    const double denom = a - 2.0 * b + c;
    if (denom < 0.0) w += 0.5 * (a - c) / denom * dw;
  }
  return w;
}

double ExponentialFit::time_constant() const {
  return rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
}

ExponentialFit fit_exponential(std::span<const double> t, std::span<const double> y, bool with_offset) {
  check_xy(t, y, with_offset ? 4 : 3);
  const double span = t.back() - t.front();
  if (!(span > 0.0)) throw FitError("fit_exponential: zero time span");
  const std::vector<double> ts = scaled(t, 1.0 / span);
  const int m = static_cast<int>(y.size());

  // Log-linear seed on positive samples.
  double rate0 = 1.0;
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    const double shift = with_offset ? std::min(0.0, *std::min_element(y.begin(), y.end())) : 0.0;
    for (int i = 0; i < m; ++i) {
      const double v = y[static_cast<std::size_t>(i)] - shift;
      if (v <= 0.0) continue;
      const double ly = std::log(v);
      sx += ts[static_cast<std::size_t>(i)];
      sy += ly;
      sxx += ts[static_cast<std::size_t>(i)] * ts[static_cast<std::size_t>(i)];
      sxy += ts[static_cast<std::size_t>(i)] * ly;
      ++cnt;
    }
    if (cnt >= 2) {
      const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
      rate0 = std::max(-slope, 1e-3);
    }
  }

  ExponentialFit best;
  double best_ssr = std::numeric_limits<double>::infinity();
  for (double seed : {rate0, rate0 * 3.0, rate0 / 3.0, 0.3, 3.0}) {
    Eigen::VectorXd x0(with_offset ? 3 : 2);
    x0(0) = y.front() - (with_offset ? y.back() : 0.0);
    x0(1) = std::sqrt(seed);
    if (with_offset) x0(2) = y.back();
    auto res = [&](const Eigen::VectorXd& p) {
      Eigen::VectorXd r(m);
      for (int i = 0; i < m; ++i) {
        const double model = p(0) * std::exp(-p(1) * p(1) * ts[static_cast<std::size_t>(i)]) + (with_offset ? p(2) : 0.0);
        r(i) = model - y[static_cast<std::size_t>(i)];
      }
      return r;
    };
    const LeastSquaresResult fit = levenberg_marquardt(res, x0, m);
    if (fit.converged && fit.ssr < best_ssr) {
      best_ssr = fit.ssr;
      best.amplitude = fit.params(0);
      const double s = fit.params(1);
      best.rate = s * s / span;
      best.rate_stderr = 2.0 * std::abs(s) * fit.stderr_of(1) / span;
      best.offset = with_offset ? fit.params(2) : 0.0;
      best.residual_rms = fit.residual_rms;
      best.with_offset = with_offset;
    }
  }
  if (!std::isfinite(best_ssr)) throw FitError("fit_exponential: no converged fit");
  return best;
}

DampedCosineFit fit_damped_cosine(std::span<const double> t, std::span<const double> y, double w_min, double w_max) {
  check_xy(t, y, 8);
  const double span = t.back() - t.front();
  const double t0 = t.front();
  std::vector<double> ts(t.begin(), t.end());
  for (double& v : ts) v = (v - t0) / span;
  const int m = static_cast<int>(y.size());
  const double w0 = dominant_angular_frequency(t, y, w_min, w_max) * span;
  const auto [mn, mx] = std::minmax_element(y.begin(), y.end());
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= m;

  auto res = [&](const Eigen::VectorXd& p) {
    Eigen::VectorXd r(m);
    for (int i = 0; i < m; ++i) {
      const double x = ts[static_cast<std::size_t>(i)];
      r(i) = p(0) + p(1) * std::exp(-p(2) * p(2) * x) * std::cos(p(3) * x + p(4)) - y[static_cast<std::size_t>(i)];
    }
    return r;
  };
  LeastSquaresResult best;
  best.ssr = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 8; ++k) {
    Eigen::VectorXd x0(5);
    x0 << mean, 0.5 * (*mx - *mn), 0.3, w0, k * std::numbers::pi / 4.0;
    const LeastSquaresResult fit = levenberg_marquardt(res, x0, m);
    if (fit.converged && fit.ssr < best.ssr) best = fit;
  }
  if (!std::isfinite(best.ssr)) throw FitError("fit_damped_cosine: no converged fit");
  DampedCosineFit out;
  out.offset = best.params(0);
  out.amplitude = best.params(1);
  out.rate = best.params(2) * best.params(2) / span;
  out.omega = best.params(3) / span;
  out.phase = best.params(4) - best.params(3) * t0 / span;
  if (out.amplitude < 0.0) {
    out.amplitude = -out.amplitude;
    out.phase += std::numbers::pi;
  }
  if (out.omega < 0.0) {
    out.omega = -out.omega;
    out.phase = -out.phase;
  }
  out.phase = std::remainder(out.phase, 2.0 * std::numbers::pi);
  out.omega_stderr = best.stderr_of(3) / span;
  out.residual_rms = best.residual_rms;
  return out;
}

Eigen::VectorXd polyfit(std::span<const double> x, std::span<const double> y, int degree) {
  check_xy(x, y, static_cast<std::size_t>(degree + 1));
  double s = 0.0;
  for (double v : x) s = std::max(s, std::abs(v));
  if (s == 0.0) s = 1.0;
  const auto m = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd A(m, degree + 1);
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double xi = x[static_cast<std::size_t>(i)] / s;
    double p = 1.0;
    for (int d = 0; d <= degree; ++d) {
      A(i, d) = p;
      p *= xi;
    }
    b(i) = y[static_cast<std::size_t>(i)];
  }
  Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  double scale = 1.0;
  for (int d = 0; d <= degree; ++d) {
    c(d) /= scale;
    scale *= s;
  }
  return c;
}

}  // namespace qnet
