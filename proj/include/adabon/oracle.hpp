#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "adabon/core.hpp"
#include "adabon/distributions.hpp"
#include "adabon/policies.hpp"
#include "adabon/rng.hpp"
#include "adabon/sources.hpp"

namespace adabon {

// Expected total of the uniform allocation with B draws per prompt, exact for
// finite-support distributions. The floor is the smallest support value,
// which is equivalent to no floor once B >= 1.
inline double exact_uniform_value(std::span<const SyntheticDistribution> dists,
                                  std::int64_t budget) {
  if (budget < 1) throw std::invalid_argument("budget must be positive");
  double total = 0.0;
  for (const auto& d : dists)
    total += exact_expected_max(d, d.support().front(), budget);
  return total;
}

// Exact expected total of the two-prompt explore-then-commit rule on a pair
// of Bernoulli prompts: explore d draws each; give the whole remaining
// 2(B-d) to the prompt whose exploration max was 0 (split evenly when both
// were 0, anywhere when both were 1). Enumerates the four exploration
// outcomes with closed-form continuation values.
inline double exact_two_stage_value(const SyntheticDistribution& first,
                                    const SyntheticDistribution& second,
                                    std::int64_t budget, std::int64_t explore) {
  if (explore < 1 || explore > budget)
    throw std::invalid_argument("exploration budget outside [1, B]");
  const double p1 = first.bernoulli_p();
  const double p2 = second.bernoulli_p();
  const auto miss = [](double p, std::int64_t n) {
    return std::pow(1.0 - p, static_cast<double>(n));
  };
  const std::int64_t rest = 2 * (budget - explore);
  const double q1 = miss(p1, explore);  // exploration max == 0
  const double q2 = miss(p2, explore);

  const double both_hit = 2.0;
  const double only_second_missed = 1.0 + (1.0 - miss(p2, rest));
  const double only_first_missed = (1.0 - miss(p1, rest)) + 1.0;
  const double both_missed =
      (1.0 - miss(p1, rest / 2)) + (1.0 - miss(p2, rest / 2));

  return (1.0 - q1) * (1.0 - q2) * both_hit + (1.0 - q1) * q2 * only_second_missed +
         q1 * (1.0 - q2) * only_first_missed + q1 * q2 * both_missed;
}

struct SimulationSummary {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t runs = 0;
};

// Monte Carlo estimate of a policy's expected total on synthetic prompts:
// mean of the per-run totals and its standard error over independent runs.
inline SimulationSummary simulate_policy_value(std::string_view policy,
                                               std::span<const SyntheticDistribution> dists,
                                               const BudgetConfig& cfg, std::int64_t runs,
                                               std::uint64_t seed,
                                               EstimatorKind estimator = EstimatorKind::kEmpirical) {
  validate_config(cfg);
  if (runs < 1) throw std::invalid_argument("runs must be positive");
  if (std::ssize(dists) != cfg.batch_size)
    throw std::invalid_argument("distribution count differs from K");

  const RewardSource source =
      RewardSource::synthetic(std::vector<SyntheticDistribution>(dists.begin(), dists.end()));
  const std::int64_t width = required_width(cfg);

  double sum = 0.0, sum_sq = 0.0;
  for (std::int64_t r = 0; r < runs; ++r) {
    const RewardMatrix matrix = source.materialize(
        width, derive_key(seed, 0, static_cast<std::uint64_t>(r), StreamPurpose::kMatrix));
    const PolicyOutcome outcome =
        run_policy(policy, matrix, cfg, estimator,
                   derive_key(seed, 0, static_cast<std::uint64_t>(r),
                              static_cast<std::uint64_t>(StreamPurpose::kPolicyBase)));
    const RunRecord rec = make_run_record(std::string(policy), outcome.allocation, matrix);
    sum += rec.total;
    sum_sq += rec.total * rec.total;
  }
  const double n = static_cast<double>(runs);
  const double mean = sum / n;
  const double var = runs > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
  return SimulationSummary{mean, std::sqrt(var / n), runs};
}

}  // namespace adabon
