#pragma once

// Product quadrature on the unit sphere S^{N-1}, N in {3, 4, 5}.
//
// The sphere is peeled recursively: y = (u, sqrt(1 - u^2) y'), y' in S^{N-2},
// with surface measure (1 - u^2)^{(N-3)/2} du dsigma'. Each polar layer uses
// the Gauss rule for its weight (Gauss-Legendre on the S^2 layer, Gauss-
// Gegenbauer on the higher ones); the last circle is a uniform azimuthal rule.
// A polar layer has 16*level nodes and the circle 32*level, so every
// polynomial of total degree <= 32*level - 1 is integrated exactly.
//
// Nodes are generated on the fly; a rule stores only its 1-D factors.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

#include "dynbc/kernels.hpp"

namespace dynbc {

// One-dimensional Gauss rule for the weight (1 - u^2)^{lambda - 1/2} on
// [-1, 1] (Golub-Welsch). lambda = 1/2 gives Gauss-Legendre.
struct GaussRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule1D gauss_gegenbauer(int n, double lambda);

class QuadratureRule {
 public:
  int dim() const { return dim_; }
  int level() const { return level_; }
  std::size_t size() const;
  // Highest total polynomial degree integrated exactly.
  int exactness() const { return exactness_; }

  // Calls visit(const SpherePoint&, double weight) for every node.
  template <typename Visit>
  void for_each_node(Visit&& visit) const {
    PointN p = zero_point();
    walk(0, p, 1.0, 1.0, visit);
  }

  friend QuadratureRule build_rule(int dim, int level);

 private:
  PointN zero_point() const;

  template <typename Visit>
  void walk(int layer, PointN& p, double scale, double w, Visit& visit) const {
    if (layer == static_cast<int>(polar_.size())) {
      const double h = 2.0 * std::numbers::pi / static_cast<double>(az_cos_.size());
      for (std::size_t j = 0; j < az_cos_.size(); ++j) {
        p[dim_ - 2] = scale * az_cos_[j];
        p[dim_ - 1] = scale * az_sin_[j];
        visit(SpherePoint(p, SpherePoint::Unchecked{}), w * h);
      }
      return;
    }
    const GaussRule1D& g = polar_[static_cast<std::size_t>(layer)];
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double u = g.nodes[i];
      p[layer] = scale * u;
      walk(layer + 1, p, scale * std::sqrt(std::max(0.0, 1.0 - u * u)), w * g.weights[i], visit);
    }
  }

  int dim_ = 0;
  int level_ = 0;
  int exactness_ = 0;
  std::vector<double> az_cos_;
  std::vector<double> az_sin_;
  std::vector<GaussRule1D> polar_;  // outermost first
};

// Throws ConfigError for dim outside {3, 4, 5} or level < 1.
QuadratureRule build_rule(int dim, int level);

// sum_i w_i f(y_i)
template <typename F>
double integrate(const QuadratureRule& rule, F&& f) {
  double s = 0.0;
  rule.for_each_node([&](const SpherePoint& y, double w) { s += w * f(y); });
  return s;
}

// Sum of all weights (equals the sphere area for a valid rule).
double total_weight(const QuadratureRule& rule);

struct AdaptiveResult {
  double value = 0.0;
  int level = 0;
  double last_change = 0.0;
};

// Largest level accepted by integrate_adaptive for a dimension (bounds the
// node count to a few tens of millions).
int max_adaptive_level(int dim);

// Doubles the level from `start_level` until two successive values differ by
// at most `tol` (absolute). Throws SolverError when the level would exceed
// `max_level`.
AdaptiveResult integrate_adaptive(int dim, const std::function<double(const SpherePoint&)>& f,
                                  int start_level, double tol, int max_level);

// Level-escalation policy for kernel integrals whose integrand peaks at the
// sphere point nearest e^t x: always refine until successive values agree to
// 1e-7 * scale. Close to the sphere (dilated radius below 1.1) refinement
// starts one level higher.
AdaptiveResult integrate_kernel_adaptive(int dim, double dilated_radius,
                                         const std::function<double(const SpherePoint&)>& f,
                                         double scale);

}  // namespace dynbc
