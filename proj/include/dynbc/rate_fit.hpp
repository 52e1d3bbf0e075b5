#pragma once

#include <span>
#include <utility>

namespace dynbc {

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  // max |log y_i - (intercept + slope log x_i)|
  double residual = 0.0;
};

// Least-squares line through (log x, log y). Throws ConfigError for fewer
// than two points, a nonpositive coordinate, or zero variance in log x.
LogLogFit fit_loglog(std::span<const std::pair<double, double>> points);

// |slope(all) - slope(all but the point with the largest x)|. Requires at
// least three points.
double leave_one_out_shift(std::span<const std::pair<double, double>> points);

}  // namespace dynbc
