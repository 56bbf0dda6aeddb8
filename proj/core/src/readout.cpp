#include "qnet/analysis/readout.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "qnet/util/errors.hpp"

namespace qnet {

ConfusionMatrix::ConfusionMatrix(const Eigen::Matrix2d& m) : m_(m) {
  for (int s = 0; s < 2; ++s) {
    if ((m_.col(s).array() < 0.0).any() || (m_.col(s).array() > 1.0).any())
      throw InvalidArgument("ConfusionMatrix: entries must lie in [0, 1]");
    if (std::abs(m_.col(s).sum() - 1.0) > 1e-12) throw InvalidArgument("ConfusionMatrix: columns must sum to 1");
  }
}

ConfusionMatrix ConfusionMatrix::from_assignment(double p_g_given_g, double p_e_given_e) {
  Eigen::Matrix2d m;
  m << p_g_given_g, 1.0 - p_e_given_e, 1.0 - p_g_given_g, p_e_given_e;
  return ConfusionMatrix(m);
}

ReadoutModel ReadoutModel::reference_device() {
  return ReadoutModel({ConfusionMatrix::from_assignment(0.985, 0.960), ConfusionMatrix::from_assignment(0.993, 0.923)});
}

ReadoutModel ReadoutModel::ideal(int n_qubits) {
  return ReadoutModel(std::vector<ConfusionMatrix>(static_cast<std::size_t>(n_qubits)));
}

Eigen::MatrixXd ReadoutModel::full() const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Ones(1, 1);
  for (const auto& q : qubits_) {
    Eigen::MatrixXd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(i * 2, j * 2, 2, 2) = out(i, j) * q.matrix();
    out = std::move(next);
  }
  return out;
}

Eigen::VectorXd apply_readout(const ReadoutModel& model, const Eigen::VectorXd& true_probs) {
  if (true_probs.size() != static_cast<Eigen::Index>(model.num_outcomes()))
    throw InvalidArgument("apply_readout: probability vector has wrong length");
  return model.full() * true_probs;
}

std::vector<long> sample_readout(const ReadoutModel& model, const Eigen::VectorXd& true_probs, long shots,
                                 std::mt19937_64& rng) {
  const std::size_t n_out = model.num_outcomes();
  if (true_probs.size() != static_cast<Eigen::Index>(n_out))
    throw InvalidArgument("sample_readout: probability vector has wrong length");
  std::vector<double> weights(n_out);
  for (std::size_t i = 0; i < n_out; ++i) weights[i] = std::max(true_probs(static_cast<Eigen::Index>(i)), 0.0);
  std::discrete_distribution<std::size_t> truth(weights.begin(), weights.end());
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const std::size_t nq = model.num_qubits();
  std::vector<long> counts(n_out, 0);
  for (long s = 0; s < shots; ++s) {
    const std::size_t t = truth(rng);
    std::size_t measured = 0;
    for (std::size_t q = 0; q < nq; ++q) {
      const int bit = static_cast<int>((t >> (nq - 1 - q)) & 1u);
      const double p_e = model.qubits()[q].matrix()(1, bit);
      const int out = uniform(rng) < p_e ? 1 : 0;
      measured = (measured << 1) | static_cast<std::size_t>(out);
    }
    ++counts[measured];
  }
  return counts;
}

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0, theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) theta = candidate;
  }
  return (v.array() - theta).cwiseMax(0.0);
}

Eigen::VectorXd correct_readout(std::span<const double> counts, const ReadoutModel& model) {
  const auto n = static_cast<Eigen::Index>(model.num_outcomes());
  if (static_cast<Eigen::Index>(counts.size()) != n) throw InvalidArgument("correct_readout: wrong number of outcomes");
  Eigen::VectorXd measured(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (counts[static_cast<std::size_t>(i)] < 0.0) throw InvalidArgument("correct_readout: negative counts");
    measured(i) = counts[static_cast<std::size_t>(i)];
  }
  const double total = measured.sum();
  if (!(total > 0.0)) throw InvalidArgument("correct_readout: no counts");
  measured /= total;

  const Eigen::MatrixXd A = model.full();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (lu.rank() < n || std::abs(lu.determinant()) < 1e-12) throw InvalidArgument("correct_readout: singular confusion matrix");
  Eigen::VectorXd p = lu.solve(measured);
  if ((p.array() >= 0.0).all()) return p / p.sum();

  // Projected gradient with Nesterov momentum on ||A p - m||^2 over the simplex.
  const double lipschitz = (A.transpose() * A).eigenvalues().cwiseAbs().maxCoeff();
  const double step = 1.0 / lipschitz;
  p = project_to_simplex(p);
  Eigen::VectorXd y = p, prev = p;
  double t = 1.0;
  for (int it = 0; it < 100000; ++it) {
    const Eigen::VectorXd grad = A.transpose() * (A * y - measured);
    const Eigen::VectorXd next = project_to_simplex(y - step * grad);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = next + ((t - 1.0) / t_next) * (next - prev);
    const double change = (next - prev).cwiseAbs().maxCoeff();
    prev = next;
    t = t_next;
    if (change < 1e-15) break;
  }
  return prev;
}

Eigen::VectorXd correct_readout(std::span<const long> counts, const ReadoutModel& model) {
  std::vector<double> c(counts.begin(), counts.end());
  return correct_readout(std::span<const double>(c), model);
}

}  // namespace qnet
