#include "qnet/tuneup/pulse_shape.hpp"

#include <cmath>

#include "qnet/util/errors.hpp"

namespace qnet {

PulseShape PulseShape::padded(double effective_s, double sigma_s, double padding_s) {
  PulseShape p{effective_s + padding_s, effective_s, sigma_s};
  p.validate();
  return p;
}

void PulseShape::validate() const {
  if (!(effective_s > 0.0) || effective_s > total_s) throw InvalidArgument("PulseShape: need 0 < t_eff <= T");
  if (!(sigma_s > 0.0)) throw InvalidArgument("PulseShape: sigma must be positive");
}

double pulse_envelope(const PulseShape& p, double t) {
  if (t < 0.0 || t > p.total_s) return 0.0;
  const double rise = p.rise_offset();
  return 0.5 * (1.0 + std::tanh(2.0 * (t - rise) / p.sigma_s) * std::tanh(2.0 * (p.total_s - rise - t) / p.sigma_s));
}

std::function<double(double)> shaped_envelope(const PulseShape& p) {
  p.validate();
  return [p](double t) { return pulse_envelope(p, t); };
}

double envelope_area(const PulseShape& p) {
  p.validate();
  // Composite Simpson with steps well below sigma.
  const int n = 2 * static_cast<int>(std::ceil(p.total_s / (p.sigma_s / 200.0) / 2.0) + 100);
  const double h = p.total_s / n;
  double sum = pulse_envelope(p, 0.0) + pulse_envelope(p, p.total_s);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * pulse_envelope(p, i * h);
  return sum * h / 3.0;
}

}  // namespace qnet
