#include "dynbc/limit_semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dynbc/errors.hpp"
#include "dynbc/sphere_quadrature.hpp"

namespace dynbc {

BoundaryDatum BoundaryDatum::constant(double value) {
  if (!std::isfinite(value)) throw ConfigError("BoundaryDatum: constant must be finite");
  BoundaryDatum d;
  d.data_ = value;
  d.sup_abs_ = std::abs(value);
  return d;
}

BoundaryDatum BoundaryDatum::sampled(std::function<double(const SpherePoint&)> f,
                                     double sup_abs) {
  if (!f) throw ConfigError("BoundaryDatum: empty function");
  if (!(sup_abs >= 0.0) || !std::isfinite(sup_abs)) {
    throw ConfigError("BoundaryDatum: sup bound must be finite and nonnegative");
  }
  BoundaryDatum d;
  d.data_ = std::move(f);
  d.sup_abs_ = sup_abs;
  return d;
}

const std::function<double(const SpherePoint&)>& BoundaryDatum::function() const {
  return std::get<std::function<double(const SpherePoint&)>>(data_);
}

namespace {

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw SingularEvaluation(std::string(what) + ": non-finite datum value");
  return v;
}

}  // namespace

double s2_apply(const KernelContext& ctx, const BoundaryDatum& psi, const ExteriorPoint& x,
                double t) {
  if (!(t >= 0.0)) throw ConfigError("s2_apply: t must be >= 0");
  const double z = std::exp(t) * x.radius();
  if (psi.is_constant()) return psi.constant_value() * kernel_mass(ctx, x.radius(), t);
  if (!(z > 1.0)) throw ConfigError("s2_apply: sampled data need e^t|x| > 1");
  const auto& f = psi.function();
  const double scale = std::max(psi.sup_abs(), 1e-300) * kernel_mass(ctx, x.radius(), t);
  return integrate_kernel_adaptive(
             ctx.dim(), z,
             [&](const SpherePoint& y) {
               return evolving_kernel(ctx, x, y, t) * checked(f(y), "s2_apply");
             },
             scale)
      .value;
}

double f1_apply(const KernelContext& ctx, const BoundaryDatum& psi, const ExteriorPoint& x,
                double t) {
  if (!(t >= 0.0)) throw ConfigError("f1_apply: t must be >= 0");
  const double p = ctx.dim() - 2.0;
  if (psi.is_constant()) {
    return -p * psi.constant_value() * std::exp(-p * t) * std::pow(x.radius(), -p);
  }
  const double z = std::exp(t) * x.radius();
  if (!(z > 1.0)) throw ConfigError("f1_apply: sampled data need e^t|x| > 1");
  const auto& f = psi.function();
  // The integrand is bounded by N z/(z-1) K; use that envelope as the scale.
  const double scale = std::max(psi.sup_abs(), 1e-300) * ctx.dim() * z / (z - 1.0) *
                       kernel_mass(ctx, x.radius(), t);
  return integrate_kernel_adaptive(
             ctx.dim(), z,
             [&](const SpherePoint& y) {
               return dt_evolving_kernel(ctx, x, y, t) * checked(f(y), "f1_apply");
             },
             scale)
      .value;
}

}  // namespace dynbc
