#include "dynbc/rate_fit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dynbc/errors.hpp"

namespace dynbc {

LogLogFit fit_loglog(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) throw ConfigError("fit_loglog: need at least two points");
  const double n = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
      throw ConfigError("fit_loglog: coordinates must be positive and finite");
    }
    mx += std::log(x);
    my += std::log(y);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  if (!(sxx > 0.0)) throw ConfigError("fit_loglog: zero variance in x");
  LogLogFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (const auto& [x, y] : points) {
    f.residual = std::max(f.residual, std::abs(std::log(y) - f.intercept - f.slope * std::log(x)));
  }
  return f;
}

double leave_one_out_shift(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw ConfigError("leave_one_out_shift: need at least three points");
  std::vector<std::pair<double, double>> rest(points.begin(), points.end());
  auto it = std::max_element(rest.begin(), rest.end(),
                             [](const auto& p, const auto& q) { return p.first < q.first; });
  rest.erase(it);
  return std::abs(fit_loglog(points).slope - fit_loglog(rest).slope);
}

}  // namespace dynbc
