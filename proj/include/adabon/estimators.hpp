#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "adabon/rng.hpp"

namespace adabon {

enum class EstimatorKind { kEmpirical, kGaussianKde, kGaussianMle };

inline EstimatorKind estimator_kind_from_name(std::string_view name) {
  if (name == "kde") return EstimatorKind::kGaussianKde;
  if (name == "empirical") return EstimatorKind::kEmpirical;
  if (name == "gaussian_mle") return EstimatorKind::kGaussianMle;
  throw std::invalid_argument("unknown estimator kind: " + std::string(name));
}

inline std::string_view estimator_name(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::kEmpirical: return "empirical";
    case EstimatorKind::kGaussianKde: return "kde";
    case EstimatorKind::kGaussianMle: return "gaussian_mle";
  }
  throw std::logic_error("unreachable");
}

// Scott's rule: h = sigma_hat * d^(-1/5), with sigma_hat the sample standard
// deviation over d-1. A single sample or zero spread gives h = 0.
inline double scott_bandwidth(std::span<const double> samples) {
  const std::size_t d = samples.size();
  if (d == 0) throw std::invalid_argument("scott_bandwidth: empty sample");
  if (d == 1) return 0.0;
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= static_cast<double>(d);
  double ssd = 0.0;
  for (double x : samples) ssd += (x - mean) * (x - mean);
  const double sigma = std::sqrt(ssd / static_cast<double>(d - 1));
  return sigma * std::pow(static_cast<double>(d), -0.2);
}

// Sampleable estimate of a reward distribution fit on the exploration draws.
// kde: resample a stored reward and add N(0, h^2) noise. empirical: resample
// only. gaussian_mle: N(mu_hat, sigma_hat^2) with the biased sigma (over d).
struct DensityEstimate {
  EstimatorKind kind = EstimatorKind::kEmpirical;
  std::vector<double> source_samples;
  double bandwidth = 0.0;  // kde
  double mu = 0.0;         // gaussian_mle
  double sigma = 0.0;      // gaussian_mle

  // True when every draw from the estimate equals a single point.
  bool degenerate() const {
    if (kind == EstimatorKind::kGaussianMle) return sigma == 0.0;
    const auto [lo, hi] =
        std::minmax_element(source_samples.begin(), source_samples.end());
    return *lo == *hi && (kind == EstimatorKind::kEmpirical || bandwidth == 0.0);
  }

  double point() const {
    return kind == EstimatorKind::kGaussianMle ? mu : source_samples.front();
  }
};

inline DensityEstimate fit(std::span<const double> samples, EstimatorKind kind) {
  if (samples.empty()) throw std::invalid_argument("fit: empty sample");
  DensityEstimate est;
  est.kind = kind;
  est.source_samples.assign(samples.begin(), samples.end());
  switch (kind) {
    case EstimatorKind::kEmpirical:
      break;
    case EstimatorKind::kGaussianKde:
      est.bandwidth = scott_bandwidth(samples);
      break;
    case EstimatorKind::kGaussianMle: {
      const auto d = static_cast<double>(samples.size());
      double mean = 0.0;
      for (double x : samples) mean += x;
      mean /= d;
      double ssd = 0.0;
      for (double x : samples) ssd += (x - mean) * (x - mean);
      est.mu = mean;
      est.sigma = std::sqrt(ssd / d);
      break;
    }
  }
  return est;
}

inline double sample_one(const DensityEstimate& est, RandomStream& rng) {
  switch (est.kind) {
    case EstimatorKind::kEmpirical:
      return est.source_samples[rng.next_below(est.source_samples.size())];
    case EstimatorKind::kGaussianKde: {
      const double base = est.source_samples[rng.next_below(est.source_samples.size())];
      return est.bandwidth > 0.0 ? base + est.bandwidth * rng.next_normal() : base;
    }
    case EstimatorKind::kGaussianMle:
      return est.sigma > 0.0 ? est.mu + est.sigma * rng.next_normal() : est.mu;
  }
  throw std::logic_error("unreachable");
}

inline std::vector<double> sample(const DensityEstimate& est, std::int64_t n,
                                  RandomStream& rng) {
  if (n < 0) throw std::invalid_argument("sample count is negative");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) out.push_back(sample_one(est, rng));
  return out;
}

}  // namespace adabon
