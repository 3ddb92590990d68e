#pragma once

#include <cstdint>
#include <utility>

namespace rmpa {

/// Regularized incomplete beta function I_x(a, b) for a, b > 0, x in [0, 1].
double regularized_incomplete_beta(double a, double b, double x);

/// Clopper-Pearson (1 - alpha) confidence interval for `successes` out of
/// `trials` Bernoulli draws, as beta-distribution quantiles.
std::pair<double, double> clopper_pearson(std::uint64_t successes,
                                          std::uint64_t trials,
                                          double alpha = 0.05);

}  // namespace rmpa
