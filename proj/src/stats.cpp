#include "smoothcond/stats.hpp"

#include <stdexcept>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/normal.hpp>

namespace smoothcond {

Interval clopper_pearson(std::uint64_t successes, std::uint64_t trials, double confidence) {
  if (trials == 0 || successes > trials) {
    throw std::domain_error("clopper_pearson: need 0 <= successes <= trials, trials > 0");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::domain_error("clopper_pearson: confidence must lie in (0, 1)");
  }
  const double tail = 0.5 * (1.0 - confidence);
  const double k = static_cast<double>(successes);
  const double n = static_cast<double>(trials);
  using boost::math::beta_distribution;
  const double low = successes == 0 ? 0.0 : quantile(beta_distribution<>(k, n - k + 1.0), tail);
  const double high =
      successes == trials ? 1.0 : quantile(beta_distribution<>(k + 1.0, n - k), 1.0 - tail);
  return {low, high};
}

McEstimate proportion_estimate(std::uint64_t successes, std::uint64_t trials, std::uint64_t seed,
                               double confidence) {
  const Interval ci = clopper_pearson(successes, trials, confidence);
  const double p = static_cast<double>(successes) / static_cast<double>(trials);
  return {p, ci.low, ci.high, trials, seed};
}

double normal_two_sided_quantile(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::domain_error("normal_two_sided_quantile: confidence must lie in (0, 1)");
  }
  return quantile(boost::math::normal_distribution<>(), 0.5 + 0.5 * confidence);
}

}  // namespace smoothcond
