#include "lexnav/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lexnav {

LinearFit simple_linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("x/y size mismatch");
  const size_t n = x.size();
  if (n < 2) throw std::invalid_argument("linear fit needs at least 2 points");

  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxx = 0, syy = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0) throw std::invalid_argument("linear fit needs at least 2 distinct x values");

  LinearFit fit;
  fit.n = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;

  double ss_res = 0;
  for (size_t i = 0; i < n; ++i) {
    const double e = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += e * e;
  }
  if (syy <= 0) {
    fit.r_squared = 1.0;  // constant y, reproduced exactly by slope 0
    fit.pearson = 0.0;
  } else {
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    fit.pearson = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  }
  return fit;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of empty set");
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("percentile of empty set");
  if (p <= 0 || p > 100) throw std::invalid_argument("percentile p out of (0,100]");
  std::sort(values.begin(), values.end());
  const size_t rank = static_cast<size_t>(std::ceil(p / 100.0 * static_cast<double>(values.size())));
  return values[rank - 1];
}

}  // namespace lexnav
