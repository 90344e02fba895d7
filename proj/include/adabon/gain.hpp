#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "adabon/core.hpp"
#include "adabon/distributions.hpp"
#include "adabon/estimators.hpp"
#include "adabon/rng.hpp"

namespace adabon {

// Monte Carlo estimate of the gain vector: values[0] is the best observed
// reward, and values[j] averages max(values[0], Z_1..Z_j) over m replicates.
// Each replicate draws one sequence of `horizon` values and reuses its
// running prefix max for every j, so each entry stays unbiased and the whole
// vector costs O(m * horizon). A degenerate estimate (all mass at one point)
// has zero sampling variance, so its vector is filled directly.
inline GainVector mc_gain_vector(std::span<const double> observed,
                                 const DensityEstimate& estimate,
                                 std::int64_t horizon, std::int64_t m,
                                 RandomStream rng) {
  if (observed.empty()) throw std::invalid_argument("mc_gain_vector: no observed rewards");
  if (horizon < 0) throw std::invalid_argument("mc_gain_vector: negative horizon");
  if (m < 1) throw std::invalid_argument("mc_gain_vector: need at least one replicate");

  const double floor = *std::max_element(observed.begin(), observed.end());
  std::vector<double> values(static_cast<std::size_t>(horizon) + 1, floor);

  if (estimate.degenerate()) {
    const double v = std::max(floor, estimate.point());
    std::fill(values.begin() + 1, values.end(), v);
    return GainVector{std::move(values), GainVector::Origin::kMonteCarlo};
  }

  std::vector<double> sums(static_cast<std::size_t>(horizon) + 1, 0.0);
  const auto& src = estimate.source_samples;
  const std::size_t n_src = src.size();
  for (std::int64_t rep = 0; rep < m; ++rep) {
    double running = floor;
    switch (estimate.kind) {
      case EstimatorKind::kEmpirical:
        for (std::int64_t j = 1; j <= horizon; ++j) {
          running = std::max(running, src[rng.next_below(n_src)]);
          sums[static_cast<std::size_t>(j)] += running;
        }
        break;
      case EstimatorKind::kGaussianKde:
        for (std::int64_t j = 1; j <= horizon; ++j) {
          const double z =
              src[rng.next_below(n_src)] + estimate.bandwidth * rng.next_normal();
          running = std::max(running, z);
          sums[static_cast<std::size_t>(j)] += running;
        }
        break;
      case EstimatorKind::kGaussianMle:
        for (std::int64_t j = 1; j <= horizon; ++j) {
          running = std::max(running, estimate.mu + estimate.sigma * rng.next_normal());
          sums[static_cast<std::size_t>(j)] += running;
        }
        break;
    }
  }
  for (std::int64_t j = 1; j <= horizon; ++j)
    values[static_cast<std::size_t>(j)] =
        sums[static_cast<std::size_t>(j)] / static_cast<double>(m);
  return GainVector{std::move(values), GainVector::Origin::kMonteCarlo};
}

// Exact gain vector for a finite-support distribution; values[j] is the
// closed-form expected max of the floor and j fresh draws.
inline GainVector exact_gain_vector(const SyntheticDistribution& dist, double floor_c,
                                    std::int64_t horizon) {
  if (horizon < 0) throw std::invalid_argument("exact_gain_vector: negative horizon");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(horizon) + 1);
  for (std::int64_t j = 0; j <= horizon; ++j)
    values.push_back(exact_expected_max(dist, floor_c, j));
  return make_exact_gain_vector(std::move(values));
}

}  // namespace adabon
