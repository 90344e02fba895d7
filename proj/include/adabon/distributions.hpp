#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "adabon/rng.hpp"

namespace adabon {

enum class Family {
  kBernoulli,
  kPointMass,
  kDiscrete,
  kGaussian,
  kGaussianMixture,
  kShiftedNegatedExponential,
};

struct GaussianComponent {
  double weight = 0.0;
  double mu = 0.0;
  double sigma = 0.0;
};

// Synthetic reward family with exact moments. Discrete families carry their
// support and point masses so the expected max of n draws has a closed form.
// shifted_negated_exponential is shift - Exp(rate): left-skewed with
// skewness exactly -2, a fixture for skew-sensitive behavior.
class SyntheticDistribution {
 public:
  static SyntheticDistribution bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bernoulli p outside [0,1]");
    SyntheticDistribution d(Family::kBernoulli);
    d.p_ = p;
    d.support_ = {0.0, 1.0};
    d.probs_ = {1.0 - p, p};
    return d;
  }

  static SyntheticDistribution point_mass(double value) {
    SyntheticDistribution d(Family::kPointMass);
    d.support_ = {value};
    d.probs_ = {1.0};
    return d;
  }

  static SyntheticDistribution discrete(std::vector<double> values,
                                        std::vector<double> probs) {
    if (values.empty() || values.size() != probs.size())
      throw std::invalid_argument("discrete support and probabilities mismatch");
    for (std::size_t i = 1; i < values.size(); ++i)
      if (!(values[i] > values[i - 1]))
        throw std::invalid_argument("discrete support must be strictly increasing");
    double sum = 0.0;
    for (double q : probs) {
      if (q < 0.0) throw std::invalid_argument("discrete probability is negative");
      sum += q;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("discrete probabilities do not sum to 1");
    SyntheticDistribution d(Family::kDiscrete);
    d.support_ = std::move(values);
    d.probs_ = std::move(probs);
    return d;
  }

  static SyntheticDistribution gaussian(double mu, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian sigma must be positive");
    SyntheticDistribution d(Family::kGaussian);
    d.components_ = {GaussianComponent{1.0, mu, sigma}};
    return d;
  }

  static SyntheticDistribution gaussian_mixture(std::vector<GaussianComponent> comps) {
    if (comps.empty()) throw std::invalid_argument("mixture needs at least one component");
    double sum = 0.0;
    for (const auto& c : comps) {
      if (!(c.weight > 0.0)) throw std::invalid_argument("mixture weight must be positive");
      if (!(c.sigma > 0.0)) throw std::invalid_argument("mixture sigma must be positive");
      sum += c.weight;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("mixture weights do not sum to 1");
    SyntheticDistribution d(Family::kGaussianMixture);
    d.components_ = std::move(comps);
    return d;
  }

  static SyntheticDistribution shifted_negated_exponential(double rate, double shift) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential rate must be positive");
    SyntheticDistribution d(Family::kShiftedNegatedExponential);
    d.rate_ = rate;
    d.shift_ = shift;
    return d;
  }

  Family family() const { return family_; }

  bool is_discrete() const {
    return family_ == Family::kBernoulli || family_ == Family::kPointMass ||
           family_ == Family::kDiscrete;
  }

  std::span<const double> support() const {
    require_discrete();
    return support_;
  }

  std::span<const double> support_probs() const {
    require_discrete();
    return probs_;
  }

  double bernoulli_p() const {
    if (family_ != Family::kBernoulli)
      throw std::invalid_argument("not a bernoulli distribution");
    return p_;
  }

  const std::vector<GaussianComponent>& components() const { return components_; }
  double rate() const { return rate_; }
  double shift() const { return shift_; }

  double mean() const {
    switch (family_) {
      case Family::kBernoulli:
      case Family::kPointMass:
      case Family::kDiscrete: {
        double m = 0.0;
        for (std::size_t i = 0; i < support_.size(); ++i) m += support_[i] * probs_[i];
        return m;
      }
      case Family::kGaussian:
      case Family::kGaussianMixture: {
        double m = 0.0;
        for (const auto& c : components_) m += c.weight * c.mu;
        return m;
      }
      case Family::kShiftedNegatedExponential:
        return shift_ - 1.0 / rate_;
    }
    throw std::logic_error("unreachable");
  }

  double variance() const {
    switch (family_) {
      case Family::kBernoulli:
      case Family::kPointMass:
      case Family::kDiscrete: {
        const double m = mean();
        double v = 0.0;
        for (std::size_t i = 0; i < support_.size(); ++i)
          v += probs_[i] * (support_[i] - m) * (support_[i] - m);
        return v;
      }
      case Family::kGaussian:
      case Family::kGaussianMixture: {
        const double m = mean();
        double v = 0.0;
        for (const auto& c : components_)
          v += c.weight * (c.sigma * c.sigma + (c.mu - m) * (c.mu - m));
        return v;
      }
      case Family::kShiftedNegatedExponential:
        return 1.0 / (rate_ * rate_);
    }
    throw std::logic_error("unreachable");
  }

  double draw_one(RandomStream& rng) const {
    switch (family_) {
      case Family::kBernoulli:
        return rng.next_unit() < p_ ? 1.0 : 0.0;
      case Family::kPointMass:
        return support_[0];
      case Family::kDiscrete: {
        const double u = rng.next_unit();
        double cum = 0.0;
        for (std::size_t i = 0; i + 1 < support_.size(); ++i) {
          cum += probs_[i];
          if (u < cum) return support_[i];
        }
        return support_.back();
      }
      case Family::kGaussian:
        return components_[0].mu + components_[0].sigma * rng.next_normal();
      case Family::kGaussianMixture: {
        const double u = rng.next_unit();
        double cum = 0.0;
        std::size_t pick = components_.size() - 1;
        for (std::size_t i = 0; i + 1 < components_.size(); ++i) {
          cum += components_[i].weight;
          if (u < cum) {
            pick = i;
            break;
          }
        }
        const auto& c = components_[pick];
        return c.mu + c.sigma * rng.next_normal();
      }
      case Family::kShiftedNegatedExponential:
        return shift_ - rng.next_exponential(rate_);
    }
    throw std::logic_error("unreachable");
  }

 private:
  explicit SyntheticDistribution(Family f) : family_(f) {}

  void require_discrete() const {
    if (!is_discrete())
      throw std::invalid_argument("operation needs a finite discrete support");
  }

  Family family_;
  std::vector<double> support_;
  std::vector<double> probs_;
  std::vector<GaussianComponent> components_;
  double p_ = 0.0;
  double rate_ = 0.0;
  double shift_ = 0.0;
};

inline std::vector<double> draw(const SyntheticDistribution& dist, std::int64_t n,
                                RandomStream& rng) {
  if (n < 0) throw std::invalid_argument("draw count is negative");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) out.push_back(dist.draw_one(rng));
  return out;
}

// E[max(c, X_1..X_n)] for a finite-support distribution: the max stays at the
// floor with probability F(c)^n, and equals support point v > c with
// probability F(v)^n - F(prev v or c)^n.
inline double exact_expected_max(const SyntheticDistribution& dist, double floor_c,
                                 std::int64_t n) {
  if (n < 0) throw std::invalid_argument("draw count is negative");
  const auto values = dist.support();
  const auto probs = dist.support_probs();
  if (n == 0) return floor_c;

  double cdf = 0.0;
  std::size_t i = 0;
  for (; i < values.size() && values[i] <= floor_c; ++i) cdf += probs[i];
  double expected = floor_c * std::pow(cdf, static_cast<double>(n));
  for (; i < values.size(); ++i) {
    const double prev = std::pow(cdf, static_cast<double>(n));
    cdf += probs[i];
    expected += values[i] * (std::pow(cdf, static_cast<double>(n)) - prev);
  }
  return expected;
}

}  // namespace adabon
