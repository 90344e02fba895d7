#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace adabon {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer. Bijective, used both for output whitening and for
// absorbing stream-identity fields into keys.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Purpose tags keep streams for different jobs disjoint under one root seed.
// Policy p in an experiment uses kPolicyBase + p.
enum class StreamPurpose : std::uint64_t {
  kBatchBuild = 1,
  kMatrix = 2,
  kSimulate = 3,
  kPolicyBase = 16,
};

// Key of the (batch, run, purpose) stream under a root seed. Fields are
// absorbed one at a time through the finalizer, so reordering or
// parallelizing batches and runs never changes any draw.
inline constexpr std::uint64_t derive_key(std::uint64_t root,
                                          std::uint64_t batch,
                                          std::uint64_t run,
                                          std::uint64_t purpose) {
  std::uint64_t k = mix64(root + kGoldenGamma);
  k = mix64(k ^ (batch + 0xC2B2AE3D27D4EB4Full));
  k = mix64(k ^ (run + 0x165667B19E3779F9ull));
  k = mix64(k ^ (purpose + 0x27D4EB2F165667C5ull));
  return k;
}

inline constexpr std::uint64_t derive_key(std::uint64_t root,
                                          std::uint64_t batch,
                                          std::uint64_t run,
                                          StreamPurpose purpose) {
  return derive_key(root, batch, run, static_cast<std::uint64_t>(purpose));
}

// Counter-based random stream: output i for key k is mix64(k + (i+1)*gamma),
// i.e. SplitMix64. State is one 64-bit word, advancing is a single add, and
// the sequence for a given key is identical on every platform. Workers must
// hold their stream exclusively; independence across workers comes from key
// derivation, never from sharing.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : state_(key) {}

  std::uint64_t next_u64() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // Child stream keyed by `index` and the current position. Forking before
  // consuming any draws makes the children a pure function of (key, index).
  RandomStream fork(std::uint64_t index) const {
    return RandomStream(mix64(state_ ^ (index + 0xD1B54A32D192ED03ull)));
  }

  // Uniform on [0,1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1); the half-ulp offset keeps log() finite.
  double next_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), n >= 1, via 128-bit multiply-shift.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  double next_normal() { return inverse_normal_cdf(next_open()); }

  double next_exponential(double rate) { return -std::log(next_open()) / rate; }

  // Standard normal quantile, Acklam's rational approximation,
  // |relative error| < 1.2e-9. Only *, /, sqrt and log, so sequences stay
  // reproducible wherever those primitives are correctly rounded.
  static double inverse_normal_cdf(double p);

 private:
  std::uint64_t state_;
};

inline double RandomStream::inverse_normal_cdf(double p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::domain_error("inverse_normal_cdf: p must lie in (0,1)");

  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace adabon
