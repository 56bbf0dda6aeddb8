#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qnet/util/errors.hpp"

namespace qnet {

struct BootstrapEstimate {
  double mean = 0.0;
  double std = 0.0;
  int n_resamples = 0;
  std::uint64_t seed = 0;
  int failures = 0;
};

/// Generator for resample i, independent of evaluation order.
inline std::mt19937_64 resample_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

/// Resample-with-replacement distribution of `estimator`. An estimator that
/// throws or returns a non-finite value counts as a failure; more than 5%
/// failures raise FitError.
template <class T, class Estimator>
BootstrapEstimate bootstrap(std::span<const T> samples, Estimator&& estimator, int n_resamples, std::uint64_t seed) {
  if (n_resamples < 100) throw InvalidArgument("bootstrap: need at least 100 resamples");
  if (samples.empty()) throw InvalidArgument("bootstrap: empty sample");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n_resamples));
  std::vector<T> buffer(samples.size());
  int failures = 0;
  for (int r = 0; r < n_resamples; ++r) {
    auto rng = resample_rng(seed, static_cast<std::uint64_t>(r));
    std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);
    for (auto& b : buffer) b = samples[pick(rng)];
    try {
      const double v = estimator(std::span<const T>(buffer));
      if (std::isfinite(v))
        values.push_back(v);
      else
        ++failures;
    } catch (const std::exception&) {
      ++failures;
    }
  }
  if (failures > n_resamples / 20) throw FitError("bootstrap: estimator failed on more than 5% of resamples");
  BootstrapEstimate out;
  out.n_resamples = n_resamples;
  out.seed = seed;
  out.failures = failures;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - out.mean) * (v - out.mean);
  out.std = values.size() > 1 ? std::sqrt(var / static_cast<double>(values.size() - 1)) : 0.0;
  return out;
}

}  // namespace qnet
