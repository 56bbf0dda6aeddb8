#include "qnet/model/network.hpp"

#include <cmath>
#include <limits>

#include "qnet/util/errors.hpp"

namespace qnet {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void validate_qubit(const QubitSpec& q, const char* name) {
  const std::string n(name);
  if (!(q.frequency.value() > 0.0)) throw InvalidArgument(n + ": frequency must be positive");
  if (!(q.t1_s > 0.0) || !(q.t2_ramsey_s > 0.0) || !(q.t2_echo_s > 0.0))
    throw InvalidArgument(n + ": coherence times must be positive");
  if (q.t2_ramsey_s > 2.0 * q.t1_s || q.t2_echo_s > 2.0 * q.t1_s)
    throw InvalidArgument(n + ": T2 exceeds 2 T1");
  if (q.dim < 2) throw InvalidArgument(n + ": dimension must be >= 2");
}

}  // namespace

NetworkModel NetworkModel::reference_device() {
  NetworkModel m;
  m.q1 = {AngularFrequency::mhz(4675.5), 62 * us, 22 * us, 34 * us, 2};
  m.q2 = {AngularFrequency::mhz(5510.7), 25 * us, 8 * us, 20 * us, 2};
  m.bus = {AngularFrequency::mhz(5173.1), 6.2 * us, 3};
  m.chi = {AngularFrequency::mhz(3.0), AngularFrequency::mhz(9.2), AngularFrequency::khz(8.0)};
  m.dephasing = DephasingSource::Echo;
  m.cross_kerr_enabled = false;
  return m;
}

void NetworkModel::validate() const {
  validate_qubit(q1, "q1");
  validate_qubit(q2, "q2");
  if (!(bus.frequency.value() > 0.0)) throw InvalidArgument("bus: frequency must be positive");
  if (!(bus.lifetime_s > 0.0)) throw InvalidArgument("bus: lifetime must be positive");
  if (bus.dim < 2) throw InvalidArgument("bus: dimension must be >= 2");
  for (auto c : {chi.q1_bus, chi.q2_bus, chi.q1_q2})
    if (!std::isfinite(c.value())) throw InvalidArgument("cross-Kerr values must be finite");
}

HilbertSpace NetworkModel::space() const { return HilbertSpace({"q1", "q2", "bus"}, {q1.dim, q2.dim, bus.dim}); }

const QubitSpec& NetworkModel::qubit(int index) const {
  if (index == 1) return q1;
  if (index == 2) return q2;
  throw InvalidArgument("qubit index must be 1 or 2");
}

double NetworkModel::t2(int index) const {
  const QubitSpec& q = qubit(index);
  return dephasing == DephasingSource::Ramsey ? q.t2_ramsey_s : q.t2_echo_s;
}

double NetworkModel::bus_quality_factor() const { return bus.frequency.value() * bus.lifetime_s; }

NetworkModel NetworkModel::with_bus_quality_factor(double q) const {
  if (!(q > 0.0)) throw InvalidArgument("quality factor must be positive");
  NetworkModel m = *this;
  m.bus.lifetime_s = q / bus.frequency.value();
  return m;
}

NetworkModel NetworkModel::without_qubit_loss() const {
  NetworkModel m = *this;
  for (QubitSpec* q : {&m.q1, &m.q2}) q->t1_s = q->t2_ramsey_s = q->t2_echo_s = inf;
  return m;
}

NetworkModel NetworkModel::without_bus_loss() const {
  NetworkModel m = *this;
  m.bus.lifetime_s = inf;
  return m;
}

NetworkModel NetworkModel::lossless() const { return without_qubit_loss().without_bus_loss(); }

void check_quality_factor(const NetworkModel& model, double user_q) {
  const double derived = model.bus_quality_factor();
  if (std::abs(derived - user_q) > 0.01 * user_q)
    throw InvalidArgument("bus quality factor inconsistent with omega_b * tau_b (derived " + std::to_string(derived) +
                          ")");
}

double pure_dephasing_rate(double t1_s, double t2_s) {
  if (t2_s > 2.0 * t1_s) throw InvalidArgument("T2 exceeds 2 T1");
  return 1.0 / t2_s - 0.5 / t1_s;
}

std::vector<Operator> collapse_operators(const NetworkModel& model) {
  model.validate();
  const HilbertSpace space = model.space();
  std::vector<Operator> ops;
  for (int i : {1, 2}) {
    const QubitSpec& q = model.qubit(i);
    const char* label = qubit_label(i);
    const double relax = 1.0 / q.t1_s;
    if (relax > 0.0) ops.push_back(annihilation(space, label) * std::sqrt(relax));
    const double t2 = model.t2(i);
    const double gphi = std::isinf(t2) && std::isinf(q.t1_s) ? 0.0 : pure_dephasing_rate(q.t1_s, t2);
    // Guard against rounding when T2 = 2 T1 exactly.
    if (gphi > 1e-12 * std::max(relax, 1.0 / t2)) ops.push_back(number(space, label) * std::sqrt(2.0 * gphi));
  }
  const double kappa = 1.0 / model.bus.lifetime_s;
  if (kappa > 0.0) ops.push_back(annihilation(space, bus_label) * std::sqrt(kappa));
  return ops;
}

DriveConfig DriveConfig::resonant(AngularFrequency omega) {
  DriveConfig d;
  d.omega1 = omega;
  d.omega2 = omega;
  return d;
}

void DriveConfig::validate() const {
  if (omega1.value() < 0.0 || omega2.value() < 0.0) throw InvalidArgument("sideband rates must be non-negative");
  if (envelope1) envelope1->validate();
  if (envelope2) envelope2->validate();
}

}  // namespace qnet
