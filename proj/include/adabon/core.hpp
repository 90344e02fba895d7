#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace adabon {

// Budget for one experiment: per-prompt budget B over a batch of K prompts,
// exploration budget d spent per prompt before committing, m Monte Carlo
// replicates for gain estimation, and the cap on the opposing budget N
// scanned by the survival metrics.
struct BudgetConfig {
  std::int64_t per_prompt_budget = 0;   // B
  std::int64_t batch_size = 0;          // K
  std::int64_t exploration_budget = 0;  // d
  std::int64_t mc_samples = 0;          // m
  std::int64_t est_cap = 0;             // defaults to 2B when read from a file
  std::int64_t runs = 0;
  std::uint64_t seed = 0;
};

// Returns the config unchanged iff every bound holds; otherwise throws
// std::invalid_argument naming the first violated bound.
inline BudgetConfig validate_config(const BudgetConfig& cfg) {
  if (cfg.per_prompt_budget < 1) throw std::invalid_argument("B must be positive");
  if (cfg.batch_size < 1) throw std::invalid_argument("K must be positive");
  if (cfg.exploration_budget < 1) throw std::invalid_argument("d must be positive");
  if (cfg.exploration_budget > cfg.per_prompt_budget)
    throw std::invalid_argument("d exceeds B");
  if (cfg.mc_samples < 1) throw std::invalid_argument("m must be positive");
  if (cfg.runs < 1) throw std::invalid_argument("runs must be positive");
  if (cfg.est_cap < cfg.per_prompt_budget)
    throw std::invalid_argument("est_cap below B");
  return cfg;
}

// Budget left after the exploration stage, (B - d) * K.
inline std::int64_t remaining_budget(const BudgetConfig& cfg) {
  return (cfg.per_prompt_budget - cfg.exploration_budget) * cfg.batch_size;
}

// Reward-matrix width so that every allocation any policy can produce and
// every N scanned by the survival sum is a prefix of a row.
inline std::int64_t required_width(const BudgetConfig& cfg) {
  return std::max(cfg.est_cap, cfg.exploration_budget + remaining_budget(cfg));
}

// Per-prompt query counts. Valid against a config: length K, non-negative,
// total at most B*K.
struct Allocation {
  std::vector<std::int64_t> counts;
};

inline Allocation make_allocation(std::vector<std::int64_t> counts,
                                  const BudgetConfig& cfg) {
  if (std::ssize(counts) != cfg.batch_size)
    throw std::invalid_argument("allocation length differs from K");
  std::int64_t total = 0;
  for (std::int64_t c : counts) {
    if (c < 0) throw std::invalid_argument("allocation count is negative");
    total += c;
  }
  if (total > cfg.per_prompt_budget * cfg.batch_size)
    throw std::invalid_argument("allocation exceeds total budget B*K");
  return Allocation{std::move(counts)};
}

// One realized reward table per run: row i holds the draws for prompt i, and
// every policy reads row prefixes of this shared table.
struct RewardMatrix {
  std::vector<std::vector<double>> rows;
  std::int64_t width = 0;
};

inline RewardMatrix make_reward_matrix(std::vector<std::vector<double>> rows) {
  if (rows.empty()) throw std::invalid_argument("reward matrix has no rows");
  const std::int64_t width = std::ssize(rows.front());
  if (width < 1) throw std::invalid_argument("reward matrix width must be positive");
  for (const auto& row : rows)
    if (std::ssize(row) != width)
      throw std::invalid_argument("reward matrix rows have unequal width");
  return RewardMatrix{std::move(rows), width};
}

// Max of the first n entries of row i, n in [1, width].
inline double prefix_max(const RewardMatrix& m, std::int64_t row, std::int64_t n) {
  if (n < 1 || n > m.width) throw std::invalid_argument("prefix length out of range");
  const auto& r = m.rows[static_cast<std::size_t>(row)];
  double best = r[0];
  for (std::int64_t j = 1; j < n; ++j) best = std::max(best, r[static_cast<std::size_t>(j)]);
  return best;
}

// values[j] is the expected max reward after j further draws, floored at the
// best reward already observed (values[0]).
struct GainVector {
  enum class Origin { kExact, kMonteCarlo };
  std::vector<double> values;
  Origin origin = Origin::kMonteCarlo;
};

// Exact gain vectors must be non-decreasing with non-increasing first
// differences; both are checked to 1e-12 at construction.
inline GainVector make_exact_gain_vector(std::vector<double> values) {
  constexpr double kTol = 1e-12;
  for (std::size_t j = 0; j + 1 < values.size(); ++j) {
    if (values[j + 1] < values[j] - kTol)
      throw std::invalid_argument("exact gain vector is not monotone");
    if (j > 0 && (values[j + 1] - values[j]) > (values[j] - values[j - 1]) + kTol)
      throw std::invalid_argument("exact gain vector differences increase");
  }
  return GainVector{std::move(values), GainVector::Origin::kExact};
}

// Per-run outcome of one policy on one reward matrix.
struct RunRecord {
  std::string policy_name;
  Allocation allocation;
  std::vector<double> per_prompt_max;
  double total = 0.0;
};

inline RunRecord make_run_record(std::string policy_name, Allocation allocation,
                                 const RewardMatrix& matrix) {
  if (std::ssize(allocation.counts) != std::ssize(matrix.rows))
    throw std::invalid_argument("allocation length differs from matrix rows");
  RunRecord rec{std::move(policy_name), std::move(allocation), {}, 0.0};
  rec.per_prompt_max.reserve(rec.allocation.counts.size());
  for (std::size_t i = 0; i < rec.allocation.counts.size(); ++i) {
    const std::int64_t n = rec.allocation.counts[i];
    if (n < 1) throw std::invalid_argument("run record needs at least one draw per prompt");
    rec.per_prompt_max.push_back(prefix_max(matrix, static_cast<std::int64_t>(i), n));
  }
  rec.total = std::accumulate(rec.per_prompt_max.begin(), rec.per_prompt_max.end(), 0.0);
  return rec;
}

}  // namespace adabon
