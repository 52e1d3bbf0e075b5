#pragma once

// Limit evolution S2(t) psi(x) = int K(e^t x, y) psi(y) dsigma_y and the
// forcing F1[psi](x, t) = int d/dt K(e^t x, y) psi(y) dsigma_y. Constant data
// use the closed forms psi0 (e^t|x|)^{-(N-2)} and its t-derivative; sampled
// data go through adaptive sphere quadrature.

#include <functional>
#include <variant>

#include "dynbc/kernels.hpp"

namespace dynbc {

class BoundaryDatum {
 public:
  // Throws ConfigError for a non-finite value.
  static BoundaryDatum constant(double value);
  // f must be finite at every quadrature node; sup_abs bounds |f| (used for
  // the quadrature tolerance).
  static BoundaryDatum sampled(std::function<double(const SpherePoint&)> f, double sup_abs);

  bool is_constant() const { return std::holds_alternative<double>(data_); }
  double constant_value() const { return std::get<double>(data_); }
  const std::function<double(const SpherePoint&)>& function() const;
  double sup_abs() const { return sup_abs_; }

 private:
  std::variant<double, std::function<double(const SpherePoint&)>> data_;
  double sup_abs_ = 0.0;
};

// [S2(t) psi](x). Constant data: psi0 (e^t|x|)^{-(N-2)}, valid up to |x| = 1.
// Sampled data require e^t|x| > 1; a node coinciding with e^t x throws
// SingularEvaluation.
double s2_apply(const KernelContext& ctx, const BoundaryDatum& psi, const ExteriorPoint& x,
                double t);

// F1[psi](x, t). Constant data: -(N-2) psi0 e^{-(N-2)t} |x|^{-(N-2)}.
// Requires e^t|x| > 1 for sampled data.
double f1_apply(const KernelContext& ctx, const BoundaryDatum& psi, const ExteriorPoint& x,
                double t);

}  // namespace dynbc
