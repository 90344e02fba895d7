#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "adabon/core.hpp"

namespace adabon {

// Batch win rate over paired runs: wins plus half the ties. Run r of both
// sides must come from the same reward matrix for the pairing to mean
// anything.
inline double batch_win_rate(std::span<const double> policy_totals,
                             std::span<const double> baseline_totals) {
  if (policy_totals.empty() || policy_totals.size() != baseline_totals.size())
    throw std::invalid_argument("batch_win_rate: totals length mismatch");
  double score = 0.0;
  for (std::size_t r = 0; r < policy_totals.size(); ++r) {
    if (policy_totals[r] > baseline_totals[r]) score += 1.0;
    else if (policy_totals[r] == baseline_totals[r]) score += 0.5;
  }
  return score / static_cast<double>(policy_totals.size());
}

// Win-tie rate against the uniform allocation with per-prompt budget N on the
// same matrices; ties count fully.
inline double bwtr(std::span<const RunRecord> policy_records,
                   std::span<const RewardMatrix> matrices, std::int64_t opposing_budget) {
  if (policy_records.empty() || policy_records.size() != matrices.size())
    throw std::invalid_argument("bwtr: records and matrices length mismatch");
  if (opposing_budget < 1) throw std::invalid_argument("bwtr: N starts at 1");
  double score = 0.0;
  for (std::size_t r = 0; r < policy_records.size(); ++r) {
    const auto& m = matrices[r];
    if (opposing_budget > m.width) throw std::invalid_argument("bwtr: N exceeds matrix width");
    double opposing = 0.0;
    for (std::int64_t i = 0; i < std::ssize(m.rows); ++i)
      opposing += prefix_max(m, i, opposing_budget);
    if (policy_records[r].total >= opposing) score += 1.0;
  }
  return score / static_cast<double>(policy_records.size());
}

// Survival time: sum of the win-tie rate over opposing budgets N = 1..cap.
// Prefix maxima are accumulated once per run, so the cost is O(R*K*cap) and
// each per-N opposing total adds row maxima in the same row order as bwtr.
inline double expected_survival_time(std::span<const RunRecord> policy_records,
                                     std::span<const RewardMatrix> matrices,
                                     std::int64_t est_cap) {
  if (policy_records.empty() || policy_records.size() != matrices.size())
    throw std::invalid_argument("expected_survival_time: length mismatch");
  if (est_cap < 1) throw std::invalid_argument("expected_survival_time: cap starts at 1");
  const double runs = static_cast<double>(policy_records.size());
  double total = 0.0;
  std::vector<double> running;
  for (std::size_t r = 0; r < policy_records.size(); ++r) {
    const auto& m = matrices[r];
    if (est_cap > m.width)
      throw std::invalid_argument("expected_survival_time: cap exceeds matrix width");
    const std::size_t k = m.rows.size();
    running.assign(k, -std::numeric_limits<double>::infinity());
    for (std::int64_t n = 1; n <= est_cap; ++n) {
      double opposing = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        running[i] = std::max(running[i], m.rows[i][static_cast<std::size_t>(n - 1)]);
        opposing += running[i];
      }
      if (policy_records[r].total >= opposing) total += 1.0;
    }
  }
  return total / runs;
}

// Average over prompts and runs of "the policy's per-prompt max is at least
// the uniform-B max on the same row"; ties count as wins.
inline double per_prompt_wtr(std::span<const RunRecord> policy_records,
                             std::span<const RewardMatrix> matrices,
                             std::int64_t uniform_budget) {
  if (policy_records.empty() || policy_records.size() != matrices.size())
    throw std::invalid_argument("per_prompt_wtr: length mismatch");
  double wins = 0.0;
  std::int64_t cells = 0;
  for (std::size_t r = 0; r < policy_records.size(); ++r) {
    const auto& m = matrices[r];
    if (uniform_budget < 1 || uniform_budget > m.width)
      throw std::invalid_argument("per_prompt_wtr: budget outside matrix width");
    for (std::int64_t i = 0; i < std::ssize(m.rows); ++i) {
      if (policy_records[r].per_prompt_max[static_cast<std::size_t>(i)] >=
          prefix_max(m, i, uniform_budget))
        wins += 1.0;
      ++cells;
    }
  }
  return wins / static_cast<double>(cells);
}

// Moment coefficient of skewness m3 / m2^(3/2) with uncorrected central
// moments (denominator n).
inline double skewness(std::span<const double> samples) {
  if (samples.size() < 3) throw std::invalid_argument("skewness: need at least 3 samples");
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= n;
  double m2 = 0.0, m3 = 0.0;
  for (double x : samples) {
    const double dev = x - mean;
    m2 += dev * dev;
    m3 += dev * dev * dev;
  }
  m2 /= n;
  m3 /= n;
  if (m2 <= 0.0) throw std::invalid_argument("skewness: degenerate variance");
  return m3 / std::pow(m2, 1.5);
}

struct QuartileSummary {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
};

// Linear interpolation between order statistics (quantile type 7).
inline double quantile_type7(std::span<const double> sorted, double p) {
  const std::size_t n = sorted.size();
  const double h = static_cast<double>(n - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, n - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

inline QuartileSummary quartile_summary(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("quartile_summary: empty input");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return QuartileSummary{quantile_type7(sorted, 0.5), quantile_type7(sorted, 0.25),
                         quantile_type7(sorted, 0.75)};
}

// Per-batch metric bundle. bwtr_curve[N-1] holds the win-tie rate against the
// uniform allocation with per-prompt budget N, and est is its truncated sum.
struct MetricReport {
  double bwr = 0.0;
  std::vector<double> bwtr_curve;
  double est = 0.0;
  double wtr = 0.0;
  std::int64_t runs = 0;
};

}  // namespace adabon
