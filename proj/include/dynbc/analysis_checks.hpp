#pragma once

// Numerical checks of auxiliary estimates: the weight h(t), the weighted
// singular convolution sup_t e^{-Lt} t^gamma int_0^t e^{Ls} s^{-a} (t-s)^{-b} ds
// and the search for the weight L past which it drops below delta, the shape
// of the F2 bound, and the long-time decay of S1(t) r^{-gamma}.

#include <utility>
#include <vector>

#include "dynbc/picard.hpp"

namespace dynbc {

// max(1, t^{-1/2}); throws ConfigError for t <= 0.
double h_weight(double t);

struct ConvolutionParams {
  double a = 0.25;
  double b = 0.25;
  double gamma = 1.0;
  double T = 1.0;
  double delta = 0.1;
  // Throws ConfigError unless 0 <= a, b < 1, a + b < 1, gamma >= 0, T > 0,
  // delta > 0.
  void validate() const;
};

// int_0^t e^{-L(t-s)} s^{-a} (t-s)^{-b} ds (exponentially scaled, no overflow).
double weighted_convolution(double a, double b, double L, double t);

// sup over 200 log-spaced t in [T 1e-6, T] of e^{-Lt} t^gamma int_0^t ...
double weighted_convolution_sup(const ConvolutionParams& p, double L);

struct LStarResult {
  double L_star = 0.0;
  double sup_at_L_star = 0.0;
  double sup_at_2L_star = 0.0;
  // (L, sup) for every probed L
  std::vector<std::pair<double, double>> trace;
};

// Doubling search from L = 1. Throws SolverError with the trace when no
// L <= 2^20 satisfies the bound, or when the value at 2 L_* exceeds delta.
LStarResult find_L_star(const ConvolutionParams& p);

struct F2BoundReport {
  double max_ratio = 0.0;
  std::size_t samples = 0;
};

// max over sample radii and mesh times of
//   |F2(r, t)| / [(t/eps)^{-1/2} e^{Lt} r^{-(N-2)} (1 + r (t/(r-1))^beta) |v|_X].
// `radii` must lie in (1, inf); times are the flux series' mesh times > 0.
F2BoundReport f2_bound_check(const FluxSeries& g, double x_norm_v, double beta, double L,
                             double epsilon, const std::vector<double>& radii,
                             std::size_t time_stride = 1);

// Admissible range of beta: (0, 1/4) for N = 3, (0, min((alpha-1)/N, 2-alpha))
// otherwise.
std::pair<double, double> beta_range(int dim, double alpha);

struct DecayFit {
  double exponent = 0.0;
  std::vector<double> times;
  std::vector<double> sup_norms;
};

// Fits log sup|S1(t) r^{-gamma}| against log(1 + t) at the given times.
DecayFit s1_decay_fit(int dim, double gamma, const std::vector<double>& times,
                      std::size_t nodes = 2000);

}  // namespace dynbc
