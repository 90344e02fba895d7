#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "adabon/core.hpp"
#include "adabon/estimators.hpp"
#include "adabon/gain.hpp"
#include "adabon/rng.hpp"

namespace adabon {

// Result of running one allocation policy on one reward matrix.
struct PolicyOutcome {
  Allocation allocation;
  std::vector<std::int64_t> exploration_used;
  std::vector<GainVector> gain_vectors;  // adaptive diagnostics, may be empty
};

// Grants `budget` unit increments one at a time, each to the prompt with the
// largest current marginal gain values[a+1] - values[a]. Ties prefer the
// prompt with the smaller current value values[a], then the lower index, so
// equal-marginal budget flows to the prompt with the most headroom instead of
// piling onto the first index. The heap re-inserts a prompt with its
// refreshed marginal after every grant, which keeps the selection correct
// for non-concave Monte Carlo vectors as well.
inline std::vector<std::int64_t> greedy_allocate(std::span<const GainVector> gains,
                                                 std::int64_t budget) {
  if (budget < 0) throw std::invalid_argument("greedy_allocate: negative budget");
  const std::int64_t k = std::ssize(gains);
  if (k == 0) throw std::invalid_argument("greedy_allocate: no gain vectors");
  for (const auto& g : gains)
    if (std::ssize(g.values) < budget + 1)
      throw std::invalid_argument("gain vector horizon shorter than budget");

  struct Entry {
    double marginal;
    double value;
    std::int64_t index;
  };
  struct Worse {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.marginal != b.marginal) return a.marginal < b.marginal;
      if (a.value != b.value) return a.value > b.value;
      return a.index > b.index;
    }
  };

  std::vector<std::int64_t> counts(static_cast<std::size_t>(k), 0);
  if (budget == 0) return counts;
  std::priority_queue<Entry, std::vector<Entry>, Worse> heap;
  for (std::int64_t i = 0; i < k; ++i) {
    const auto& v = gains[static_cast<std::size_t>(i)].values;
    heap.push(Entry{v[1] - v[0], v[0], i});
  }
  for (std::int64_t t = 0; t < budget; ++t) {
    Entry top = heap.top();
    heap.pop();
    auto& a = counts[static_cast<std::size_t>(top.index)];
    ++a;
    const auto& v = gains[static_cast<std::size_t>(top.index)].values;
    if (a + 1 < std::ssize(v))
      heap.push(Entry{v[a + 1] - v[a], v[a], top.index});
  }
  return counts;
}

// Non-adaptive baseline: B draws for every prompt, no exploration stage.
inline PolicyOutcome uniform_policy(const BudgetConfig& cfg) {
  validate_config(cfg);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(cfg.batch_size),
                                   cfg.per_prompt_budget);
  return PolicyOutcome{make_allocation(std::move(counts), cfg),
                       std::vector<std::int64_t>(static_cast<std::size_t>(cfg.batch_size), 0),
                       {}};
}

// Two-stage adaptive policy: read the first d rewards of each row as the
// exploration sample, fit one density estimate per prompt, estimate gain
// vectors with horizon (B-d)*K by Monte Carlo, then spend the remaining
// (B-d)*K queries greedily. Prompt i's replicates come from fork(i) of the
// supplied stream, so prompts are independent and the outcome is a pure
// function of (matrix, config, estimator, stream key).
inline PolicyOutcome adabon_policy(const RewardMatrix& matrix, const BudgetConfig& cfg,
                                   EstimatorKind estimator, RandomStream rng) {
  validate_config(cfg);
  const std::int64_t k = cfg.batch_size;
  const std::int64_t d = cfg.exploration_budget;
  const std::int64_t horizon = remaining_budget(cfg);
  if (std::ssize(matrix.rows) != k)
    throw std::invalid_argument("matrix row count differs from K");
  if (matrix.width < d + horizon)
    throw std::invalid_argument("matrix too narrow for exploration plus remainder");

  std::vector<GainVector> gains;
  gains.reserve(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i) {
    const auto& row = matrix.rows[static_cast<std::size_t>(i)];
    const std::span<const double> explored(row.data(), static_cast<std::size_t>(d));
    const DensityEstimate est = fit(explored, estimator);
    gains.push_back(mc_gain_vector(explored, est, horizon, cfg.mc_samples,
                                   rng.fork(static_cast<std::uint64_t>(i))));
  }

  std::vector<std::int64_t> counts = greedy_allocate(gains, horizon);
  for (auto& c : counts) c += d;
  return PolicyOutcome{make_allocation(std::move(counts), cfg),
                       std::vector<std::int64_t>(static_cast<std::size_t>(k), d),
                       std::move(gains)};
}

// Variance-proportional baseline: after the shared exploration stage, the
// remaining (B-d)*K queries are split proportionally to each prompt's
// empirical reward standard deviation (over d-1), rounded by the largest
// remainder so the increments sum exactly. All-zero deviations fall back to
// an even split.
inline PolicyOutcome varbon_policy(const RewardMatrix& matrix, const BudgetConfig& cfg) {
  validate_config(cfg);
  const std::int64_t k = cfg.batch_size;
  const std::int64_t d = cfg.exploration_budget;
  const std::int64_t remaining = remaining_budget(cfg);
  if (std::ssize(matrix.rows) != k)
    throw std::invalid_argument("matrix row count differs from K");
  if (matrix.width < d + remaining)
    throw std::invalid_argument("matrix too narrow for exploration plus remainder");

  std::vector<double> sigma(static_cast<std::size_t>(k), 0.0);
  double sigma_sum = 0.0;
  for (std::int64_t i = 0; i < k; ++i) {
    const auto& row = matrix.rows[static_cast<std::size_t>(i)];
    if (d > 1) {
      double mean = 0.0;
      for (std::int64_t j = 0; j < d; ++j) mean += row[static_cast<std::size_t>(j)];
      mean /= static_cast<double>(d);
      double ssd = 0.0;
      for (std::int64_t j = 0; j < d; ++j) {
        const double dev = row[static_cast<std::size_t>(j)] - mean;
        ssd += dev * dev;
      }
      sigma[static_cast<std::size_t>(i)] = std::sqrt(ssd / static_cast<double>(d - 1));
    }
    sigma_sum += sigma[static_cast<std::size_t>(i)];
  }

  std::vector<std::int64_t> inc(static_cast<std::size_t>(k), 0);
  std::vector<double> remainder(static_cast<std::size_t>(k), 0.0);
  std::int64_t assigned = 0;
  for (std::int64_t i = 0; i < k; ++i) {
    const double share = sigma_sum > 0.0 ? sigma[static_cast<std::size_t>(i)] / sigma_sum
                                         : 1.0 / static_cast<double>(k);
    const double ideal = share * static_cast<double>(remaining);
    const auto base = static_cast<std::int64_t>(std::floor(ideal));
    inc[static_cast<std::size_t>(i)] = base;
    remainder[static_cast<std::size_t>(i)] = ideal - static_cast<double>(base);
    assigned += base;
  }
  std::vector<std::int64_t> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
    const double ra = remainder[static_cast<std::size_t>(a)];
    const double rb = remainder[static_cast<std::size_t>(b)];
    if (ra != rb) return ra > rb;
    return a < b;
  });
  for (std::int64_t left = remaining - assigned, i = 0; left > 0; --left, ++i)
    ++inc[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];

  std::vector<std::int64_t> counts(static_cast<std::size_t>(k), d);
  for (std::int64_t i = 0; i < k; ++i) counts[static_cast<std::size_t>(i)] += inc[static_cast<std::size_t>(i)];
  return PolicyOutcome{make_allocation(std::move(counts), cfg),
                       std::vector<std::int64_t>(static_cast<std::size_t>(k), d),
                       {}};
}

// Dispatch by the external policy name.
inline PolicyOutcome run_policy(std::string_view name, const RewardMatrix& matrix,
                                const BudgetConfig& cfg, EstimatorKind estimator,
                                std::uint64_t stream_key) {
  if (name == "uniform") return uniform_policy(cfg);
  if (name == "adabon") return adabon_policy(matrix, cfg, estimator, RandomStream(stream_key));
  if (name == "varbon") return varbon_policy(matrix, cfg);
  throw std::invalid_argument("unknown policy: " + std::string(name));
}

}  // namespace adabon
