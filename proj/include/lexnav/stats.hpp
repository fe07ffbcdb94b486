#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lexnav {

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;  // coefficient of determination, clamped to [0,1]
  double pearson = 0;    // 0 when y has no variance
  size_t n = 0;
};

// Ordinary least squares of y on x. Requires n >= 2 and non-degenerate x.
LinearFit simple_linear_fit(std::span<const double> x, std::span<const double> y);

// Midpoint median (mean of the two central order statistics for even n).
double median(std::vector<double> values);

// Nearest-rank percentile, p in (0, 100].
double percentile(std::vector<double> values, double p);

}  // namespace lexnav
