#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace dynbc {

// Radial discretization of the truncated exterior domain 1 <= |x| <= R in
// R^N. Nodes are graded toward r = 1:
//   r_i = 1 + (R - 1) (e^{sigma xi_i} - 1) / (e^sigma - 1),  xi_i = i / (n - 1),
// with sigma = 0 meaning a uniform grid.
class RadialGrid {
 public:
  // Throws ConfigError unless dim >= 3, nodes >= 3, R > 2, sigma >= 0.
  static std::shared_ptr<const RadialGrid> graded(int dim, std::size_t nodes, double R,
                                                  double sigma);

  int dim() const { return dim_; }
  double sigma() const { return sigma_; }
  double outer_radius() const { return r_.back(); }
  std::size_t size() const { return r_.size(); }
  std::span<const double> r() const { return r_; }
  double operator[](std::size_t i) const { return r_[i]; }

  // Same R and sigma with every interval halved (2n - 1 nodes; the old nodes
  // are the even-indexed new ones).
  std::shared_ptr<const RadialGrid> refined() const;

  // Second-order one-sided coefficients (a0, a1, a2) with
  // u'(1) ~ a0 u_0 + a1 u_1 + a2 u_2.
  std::array<double, 3> boundary_derivative_stencil() const;

 private:
  RadialGrid() = default;
  int dim_ = 0;
  double sigma_ = 0.0;
  std::vector<double> r_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

// Values of a radial function on a RadialGrid.
struct RadialField {
  GridPtr grid;
  std::vector<double> values;

  RadialField() = default;
  RadialField(GridPtr g, std::vector<double> v);
  static RadialField zeros(GridPtr g);
  static RadialField sample(GridPtr g, const std::function<double(double)>& f);

  std::size_t size() const { return values.size(); }
  double sup_norm() const;
  // Throws ConfigError on a non-finite entry.
  void require_finite(const char* what) const;
};

// Centered-difference radial derivative on the graded grid, one-sided
// second-order at both ends.
std::vector<double> radial_gradient(const RadialGrid& grid, std::span<const double> u);

// max_i |du/dr (r_i)|
double gradient_sup_norm(const RadialGrid& grid, std::span<const double> u);

// Linear interpolation of grid values at radius r (clamped to [1, R]).
double interpolate(const RadialGrid& grid, std::span<const double> u, double r);

}  // namespace dynbc
