#pragma once

// Pointwise kernels of the exterior-ball problem: the Poisson kernel of the
// unit ball, its Kelvin transform to the exterior, the dilated ("evolving")
// kernel K(e^t x, y) and its time derivative.

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>

namespace dynbc {

inline constexpr int kMaxDim = 8;

// Small fixed-capacity vector in R^N, N <= kMaxDim.
class PointN {
 public:
  PointN() = default;
  explicit PointN(std::span<const double> coords);
  PointN(std::initializer_list<double> coords);

  int dim() const { return dim_; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  std::span<const double> coords() const { return {c_.data(), static_cast<std::size_t>(dim_)}; }

  double norm() const;
  double norm_squared() const;
  double dot(const PointN& o) const;
  PointN scaled(double s) const;

 private:
  std::array<double, kMaxDim> c_{};
  int dim_ = 0;
};

double distance_squared(const PointN& a, const PointN& b);

// A point on the unit sphere S^{N-1} = boundary of the exterior domain.
class SpherePoint {
 public:
  // Throws ConfigError unless | |p| - 1 | <= 1e-12.
  explicit SpherePoint(const PointN& p);
  // Normalizes an arbitrary nonzero vector.
  static SpherePoint normalized(const PointN& p);

  const PointN& point() const { return p_; }
  int dim() const { return p_.dim(); }
  double operator[](int i) const { return p_[i]; }

 private:
  struct Unchecked {};
  SpherePoint(const PointN& p, Unchecked) : p_(p) {}
  PointN p_;
  friend class QuadratureRule;
};

// A point of the closed exterior domain {|x| >= 1}.
class ExteriorPoint {
 public:
  // Throws ConfigError if |x| < 1 - 1e-14.
  explicit ExteriorPoint(const PointN& p);
  // (radius, 0, ..., 0)
  static ExteriorPoint on_axis(int dim, double radius);

  const PointN& point() const { return p_; }
  int dim() const { return p_.dim(); }
  double radius() const { return p_.norm(); }

 private:
  PointN p_;
};

// Surface area of S^{N-1}: 2 pi^{N/2} / Gamma(N/2).
double sphere_area(int dim);

class KernelContext {
 public:
  // Throws ConfigError unless 3 <= dim <= kMaxDim.
  explicit KernelContext(int dim);

  int dim() const { return dim_; }
  // Normalization of the Poisson kernel, 1 / |S^{N-1}|.
  double c_n() const { return c_n_; }

 private:
  int dim_;
  double c_n_;
};

// c_N (1 - |x|^2) / |x - y|^N for |x| <= 1.
double poisson_kernel(const KernelContext& ctx, const PointN& x, const SpherePoint& y);

// |x|^{-(N-2)} P(x / |x|^2, y).
double kelvin_kernel(const KernelContext& ctx, const ExteriorPoint& x, const SpherePoint& y);

// K(e^t x, y).
double evolving_kernel(const KernelContext& ctx, const ExteriorPoint& x, const SpherePoint& y,
                       double t);

// d/dt K(e^t x, y) through the closed form
//   K(z, y) [2 - N + 2/(|z|^2 - 1) + N (1 - z.y)/|z - y|^2],  z = e^t x.
// Requires e^t |x| > 1 strictly.
double dt_evolving_kernel(const KernelContext& ctx, const ExteriorPoint& x, const SpherePoint& y,
                          double t);

// Total boundary mass of K(e^t x, .): (e^t |x|)^{-(N-2)}.
double kernel_mass(const KernelContext& ctx, double radius, double t);

}  // namespace dynbc
