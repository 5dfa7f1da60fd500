#pragma once

#include <cstdint>

namespace smoothcond {

/// Monte Carlo result with a two-sided confidence interval.
struct McEstimate {
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  double half_width() const { return 0.5 * (ci_high - ci_low); }
  bool contains(double x) const { return ci_low <= x && x <= ci_high; }
};

struct Interval {
  double low;
  double high;
};

inline constexpr double kDefaultConfidence = 0.99;

/// Exact (Clopper-Pearson) interval for a binomial proportion.
Interval clopper_pearson(std::uint64_t successes, std::uint64_t trials,
                         double confidence = kDefaultConfidence);

/// Proportion estimate with Clopper-Pearson bounds.
McEstimate proportion_estimate(std::uint64_t successes, std::uint64_t trials, std::uint64_t seed,
                               double confidence = kDefaultConfidence);

/// Two-sided standard normal quantile z with P(|Z| <= z) = confidence.
double normal_two_sided_quantile(double confidence);

}  // namespace smoothcond
