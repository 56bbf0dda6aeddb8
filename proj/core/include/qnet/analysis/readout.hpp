#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qnet {

/// Single-qubit assignment matrix, entry (m, s) = P(measured m | prepared s), 0 = g, 1 = e.
class ConfusionMatrix {
 public:
  ConfusionMatrix() : m_(Eigen::Matrix2d::Identity()) {}
  explicit ConfusionMatrix(const Eigen::Matrix2d& m);
  static ConfusionMatrix from_assignment(double p_g_given_g, double p_e_given_e);

  const Eigen::Matrix2d& matrix() const { return m_; }

 private:
  Eigen::Matrix2d m_;
};

/// Independent per-qubit readout. Outcome index uses qubit 0 as the most
/// significant bit, e.g. for two qubits index = 2 m_1 + m_2.
class ReadoutModel {
 public:
  ReadoutModel() = default;
  explicit ReadoutModel(std::vector<ConfusionMatrix> qubits) : qubits_(std::move(qubits)) {}
  /// Assignment fidelities of the reference two-qubit device.
  static ReadoutModel reference_device();
  static ReadoutModel ideal(int n_qubits);

  std::size_t num_qubits() const { return qubits_.size(); }
  std::size_t num_outcomes() const { return std::size_t{1} << qubits_.size(); }
  const std::vector<ConfusionMatrix>& qubits() const { return qubits_; }
  /// Tensor product of the per-qubit matrices.
  Eigen::MatrixXd full() const;

 private:
  std::vector<ConfusionMatrix> qubits_;
};

/// Measured outcome distribution for true outcome probabilities.
Eigen::VectorXd apply_readout(const ReadoutModel& model, const Eigen::VectorXd& true_probs);

/// Draws shots from the true distribution and flips each qubit's outcome per its confusion column.
std::vector<long> sample_readout(const ReadoutModel& model, const Eigen::VectorXd& true_probs, long shots,
                                 std::mt19937_64& rng);

/// Least-squares inversion of the readout channel constrained to the probability simplex.
Eigen::VectorXd correct_readout(std::span<const double> counts, const ReadoutModel& model);
Eigen::VectorXd correct_readout(std::span<const long> counts, const ReadoutModel& model);

/// Euclidean projection onto {p >= 0, sum p = 1}.
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v);

}  // namespace qnet
