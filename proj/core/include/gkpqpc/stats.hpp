#pragma once

#include <cstdint>
#include <span>

namespace gkpqpc {

struct IntervalEstimate {
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Wilson score interval for a binomial proportion. z defaults to the
// two-sided 95% normal quantile.
IntervalEstimate wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                 double z = 1.959963984540054);

// Empirical quantile (linear interpolation) of an unsorted sample; q in [0,1].
double quantile(std::span<const double> sample, double q);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace gkpqpc
