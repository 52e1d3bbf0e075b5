#include "dynbc/analysis_checks.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <sstream>

#include "dynbc/rate_fit.hpp"

namespace dynbc {

double h_weight(double t) {
  if (!(t > 0.0)) throw ConfigError("h_weight: t must be positive");
  return std::max(1.0, 1.0 / std::sqrt(t));
}

void ConvolutionParams::validate() const {
  if (!(a >= 0.0 && a < 1.0 && b >= 0.0 && b < 1.0)) {
    throw ConfigError("ConvolutionParams: a and b must lie in [0, 1)");
  }
  if (!(a + b < 1.0)) throw ConfigError("ConvolutionParams: a + b must be < 1");
  if (!(gamma >= 0.0)) throw ConfigError("ConvolutionParams: gamma must be >= 0");
  if (!(T > 0.0)) throw ConfigError("ConvolutionParams: T must be positive");
  if (!(delta > 0.0)) throw ConfigError("ConvolutionParams: delta must be positive");
}

double weighted_convolution(double a, double b, double L, double t) {
  if (!(t > 0.0)) return 0.0;
  if (a == 0.0 && b == 0.0) return L > 0.0 ? -std::expm1(-L * t) / L : t;
  // u = t - s; the weight e^{-Lu} concentrates the mass in u < 1/L.
  auto f = [&](double u) {
    const double w = t - u;
    if (u <= 0.0 || w <= 0.0) return 0.0;
    return std::exp(-L * u) * std::pow(u, -b) * std::pow(w, -a);
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  const double m = L > 0.0 ? std::min(0.5 * t, 30.0 / L) : 0.5 * t;
  double err = 0.0;
  double v = ts.integrate(f, 0.0, m, 1e-12, &err);
  v += ts.integrate(f, m, t, 1e-12, &err);
  if (!std::isfinite(v)) throw SolverError("weighted_convolution: quadrature failed");
  return v;
}

double weighted_convolution_sup(const ConvolutionParams& p, double L) {
  p.validate();
  if (!(L > 0.0)) throw ConfigError("weighted_convolution_sup: L must be positive");
  constexpr int kSamples = 200;
  double best = 0.0;
  for (int k = 0; k < kSamples; ++k) {
    const double t = k == kSamples - 1 ? p.T : p.T * std::pow(1e-6, 1.0 - k / (kSamples - 1.0));
    best = std::max(best, std::pow(t, p.gamma) * weighted_convolution(p.a, p.b, L, t));
  }
  return best;
}

LStarResult find_L_star(const ConvolutionParams& p) {
  p.validate();
  LStarResult out;
  for (double L = 1.0; L <= 1048576.0; L *= 2.0) {
    const double s = weighted_convolution_sup(p, L);
    out.trace.emplace_back(L, s);
    if (s <= p.delta) {
      out.L_star = L;
      out.sup_at_L_star = s;
      out.sup_at_2L_star = weighted_convolution_sup(p, 2.0 * L);
      if (out.sup_at_2L_star > p.delta) {
        throw SolverError("find_L_star: bound fails again at 2 L_*");
      }
      return out;
    }
  }
  std::ostringstream msg;
  msg << "find_L_star: no L <= 2^20 reaches delta = " << p.delta << ";";
  for (const auto& [l, s] : out.trace) msg << " " << l << ":" << s;
  throw SolverError(msg.str());
}

F2BoundReport f2_bound_check(const FluxSeries& g, double x_norm_v, double beta, double L,
                             double epsilon, const std::vector<double>& radii,
                             std::size_t time_stride) {
  if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("f2_bound_check: beta must lie in (0, 1)");
  if (time_stride < 1) throw ConfigError("f2_bound_check: stride must be >= 1");
  F2BoundReport rep;
  const double p = g.dim - 2.0;
  for (double r : radii) {
    if (!(r > 1.0)) throw ConfigError("f2_bound_check: radii must exceed 1");
    for (std::size_t n = 1; n < g.times.size(); n += time_stride) {
      const double t = g.times[n];
      ++rep.samples;
      if (x_norm_v == 0.0) continue;
      const double shape = std::pow(t / epsilon, -0.5) * std::exp(L * t) * std::pow(r, -p) *
                           (1.0 + r * std::pow(t / (r - 1.0), beta));
      rep.max_ratio = std::max(rep.max_ratio, std::abs(f2_radial(g, r, t)) / (shape * x_norm_v));
    }
  }
  return rep;
}

std::pair<double, double> beta_range(int dim, double alpha) {
  if (dim == 3) return {0.0, 0.25};
  return {0.0, std::min((alpha - 1.0) / dim, 2.0 - alpha)};
}

DecayFit s1_decay_fit(int dim, double gamma, const std::vector<double>& times,
                      std::size_t nodes) {
  if (times.size() < 2) throw ConfigError("s1_decay_fit: need at least two times");
  const double R = std::min(1.0 + 8.0 * std::sqrt(times.back()), 1e4);
  auto grid = RadialGrid::graded(dim, nodes, std::max(R, 3.0), 3.0);
  const RadialField phi = RadialField::sample(grid, [&](double r) { return std::pow(r, -gamma); });
  HeatStepperConfig cfg;
  cfg.dt_initial = 1e-4;
  cfg.dt_growth = 1.05;
  const auto out = evolve_s1_samples(phi, times, cfg);
  DecayFit fit;
  fit.times = times;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t k = 0; k < times.size(); ++k) {
    fit.sup_norms.push_back(out[k].sup_norm());
    pts.emplace_back(1.0 + times[k], fit.sup_norms.back());
  }
  fit.exponent = fit_loglog(pts).slope;
  return fit;
}

}  // namespace dynbc
