#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qnet/quantum/hilbert.hpp"
#include "qnet/tuneup/pulse_shape.hpp"
#include "qnet/util/units.hpp"

namespace qnet {

enum class DephasingSource { Ramsey, Echo };

struct QubitSpec {
  AngularFrequency frequency;
  double t1_s = 0.0;
  double t2_ramsey_s = 0.0;
  double t2_echo_s = 0.0;
  int dim = 2;
};

struct BusSpec {
  AngularFrequency frequency;
  double lifetime_s = 0.0;
  int dim = 3;
};

struct CrossKerr {
  AngularFrequency q1_bus;
  AngularFrequency q2_bus;
  AngularFrequency q1_q2;
};

/// Two qubits coupled through one lossy bus mode. Times may be infinite to
/// switch a loss channel off.
struct NetworkModel {
  QubitSpec q1;
  QubitSpec q2;
  BusSpec bus;
  CrossKerr chi;
  DephasingSource dephasing = DephasingSource::Echo;
  bool cross_kerr_enabled = false;

  /// Reference device of the two-module network.
  static NetworkModel reference_device();

  void validate() const;
  HilbertSpace space() const;
  const QubitSpec& qubit(int index) const;
  /// T2 selected by the dephasing switch.
  double t2(int index) const;
  double bus_quality_factor() const;

  NetworkModel with_bus_quality_factor(double q) const;
  NetworkModel without_qubit_loss() const;
  NetworkModel without_bus_loss() const;
  NetworkModel lossless() const;
};

/// Throws InvalidArgument when a user-supplied Q_b differs from omega_b tau_b by more than 1%.
void check_quality_factor(const NetworkModel& model, double user_q);

inline const char* qubit_label(int index) { return index == 1 ? "q1" : "q2"; }
inline constexpr const char* bus_label = "bus";

/// gamma_phi = 1/T2 - 1/(2 T1).
double pure_dephasing_rate(double t1_s, double t2_s);

/// Relaxation and dephasing of both qubits plus bus decay; zero-rate
/// channels are omitted.
std::vector<Operator> collapse_operators(const NetworkModel& model);

struct DriveConfig {
  AngularFrequency omega1;
  AngularFrequency omega2;
  /// Common qubit-bus detuning Delta.
  AngularFrequency detuning;
  /// Relative detuning delta applied on qubit 2.
  AngularFrequency relative_detuning;
  double phase1 = 0.0;
  double phase2 = 0.0;
  std::optional<PulseShape> envelope1;
  std::optional<PulseShape> envelope2;

  static DriveConfig resonant(AngularFrequency omega);
  void validate() const;
};

}  // namespace qnet
