#include "dynbc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dynbc/errors.hpp"

namespace dynbc {

PointN::PointN(std::span<const double> coords) {
  if (coords.empty() || coords.size() > static_cast<std::size_t>(kMaxDim)) {
    throw ConfigError("PointN: dimension " + std::to_string(coords.size()) + " out of range");
  }
  dim_ = static_cast<int>(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) c_[i] = coords[i];
}

PointN::PointN(std::initializer_list<double> coords)
    : PointN(std::span<const double>(coords.begin(), coords.size())) {}

double PointN::norm_squared() const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += c_[i] * c_[i];
  return s;
}

double PointN::norm() const { return std::sqrt(norm_squared()); }

double PointN::dot(const PointN& o) const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += c_[i] * o.c_[i];
  return s;
}

PointN PointN::scaled(double s) const {
  PointN out = *this;
  for (int i = 0; i < dim_; ++i) out.c_[i] *= s;
  return out;
}

double distance_squared(const PointN& a, const PointN& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

SpherePoint::SpherePoint(const PointN& p) : p_(p) {
  if (std::abs(p.norm() - 1.0) > 1e-12) {
    throw ConfigError("SpherePoint: norm differs from 1 by more than 1e-12");
  }
}

SpherePoint SpherePoint::normalized(const PointN& p) {
  const double n = p.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw ConfigError("SpherePoint: cannot normalize");
  return SpherePoint(p.scaled(1.0 / n), Unchecked{});
}

ExteriorPoint::ExteriorPoint(const PointN& p) : p_(p) {
  if (!(p.norm() >= 1.0 - 1e-14)) throw ConfigError("ExteriorPoint: |x| < 1");
}

ExteriorPoint ExteriorPoint::on_axis(int dim, double radius) {
  std::array<double, kMaxDim> c{};
  c[0] = radius;
  return ExteriorPoint(PointN(std::span<const double>(c.data(), static_cast<std::size_t>(dim))));
}

double sphere_area(int dim) {
  const double half = 0.5 * dim;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

KernelContext::KernelContext(int dim) : dim_(dim) {
  if (dim < 3 || dim > kMaxDim) {
    throw ConfigError("KernelContext: dimension must lie in [3, " + std::to_string(kMaxDim) +
                      "], got " + std::to_string(dim));
  }
  c_n_ = 1.0 / sphere_area(dim);
}

namespace {

void check_dims(const KernelContext& ctx, const PointN& x, const SpherePoint& y) {
  if (x.dim() != ctx.dim() || y.dim() != ctx.dim()) {
    throw ConfigError("kernel: point dimension does not match context");
  }
}

// Poisson kernel without the |x| <= 1 check; `one_minus_x2` passed in so the
// Kelvin path can form it as 1 - 1/|x|^2 without cancellation.
double poisson_raw(const KernelContext& ctx, const PointN& x, const SpherePoint& y,
                   double one_minus_x2) {
  const double d2 = distance_squared(x, y.point());
  if (d2 == 0.0) throw SingularEvaluation("Poisson kernel evaluated at x == y");
  if (one_minus_x2 == 0.0) return 0.0;
  return ctx.c_n() * one_minus_x2 / std::pow(d2, 0.5 * ctx.dim());
}

}  // namespace

double poisson_kernel(const KernelContext& ctx, const PointN& x, const SpherePoint& y) {
  check_dims(ctx, x, y);
  const double x2 = x.norm_squared();
  if (x2 > 1.0 + 1e-14) throw ConfigError("poisson_kernel: |x| > 1");
  return poisson_raw(ctx, x, y, std::max(0.0, 1.0 - x2));
}

double kelvin_kernel(const KernelContext& ctx, const ExteriorPoint& x, const SpherePoint& y) {
  check_dims(ctx, x.point(), y);
  const double x2 = x.point().norm_squared();
  const PointN z = x.point().scaled(1.0 / x2);
  const double p = poisson_raw(ctx, z, y, std::max(0.0, 1.0 - 1.0 / x2));
  return std::pow(x2, -0.5 * (ctx.dim() - 2)) * p;
}

double evolving_kernel(const KernelContext& ctx, const ExteriorPoint& x, const SpherePoint& y,
                       double t) {
  if (t < 0.0) throw ConfigError("evolving_kernel: t < 0");
  return kelvin_kernel(ctx, ExteriorPoint(x.point().scaled(std::exp(t))), y);
}

double dt_evolving_kernel(const KernelContext& ctx, const ExteriorPoint& x, const SpherePoint& y,
                          double t) {
  if (t < 0.0) throw ConfigError("dt_evolving_kernel: t < 0");
  const ExteriorPoint z(x.point().scaled(std::exp(t)));
  const double z2 = z.point().norm_squared();
  if (!(z2 > 1.0)) {
    throw SingularEvaluation("dt_evolving_kernel: dilated point lies on the unit sphere");
  }
  const double k = kelvin_kernel(ctx, z, y);
  const double n = ctx.dim();
  const double d2 = distance_squared(z.point(), y.point());
  const double bracket = 2.0 - n + 2.0 / (z2 - 1.0) + n * (1.0 - z.point().dot(y.point())) / d2;
  return k * bracket;
}

double kernel_mass(const KernelContext& ctx, double radius, double t) {
  return std::pow(std::exp(t) * radius, -(ctx.dim() - 2.0));
}

}  // namespace dynbc
