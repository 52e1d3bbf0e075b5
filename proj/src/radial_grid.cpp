#include "dynbc/radial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dynbc/errors.hpp"

namespace dynbc {

std::shared_ptr<const RadialGrid> RadialGrid::graded(int dim, std::size_t nodes, double R,
                                                     double sigma) {
  if (dim < 3) throw ConfigError("RadialGrid: dimension must be >= 3");
  if (nodes < 3) throw ConfigError("RadialGrid: need at least 3 nodes");
  if (!(R > 2.0) || !std::isfinite(R)) throw ConfigError("RadialGrid: R must exceed 2");
  if (!(sigma >= 0.0)) throw ConfigError("RadialGrid: sigma must be >= 0");

  std::shared_ptr<RadialGrid> g(new RadialGrid());
  g->dim_ = dim;
  g->sigma_ = sigma;
  g->r_.resize(nodes);
  const double span = R - 1.0;
  const double denom = sigma > 0.0 ? std::expm1(sigma) : 1.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    const double xi = static_cast<double>(i) / static_cast<double>(nodes - 1);
    const double frac = sigma > 0.0 ? std::expm1(sigma * xi) / denom : xi;
    g->r_[i] = 1.0 + span * frac;
  }
  g->r_.front() = 1.0;
  g->r_.back() = R;
  return g;
}

std::shared_ptr<const RadialGrid> RadialGrid::refined() const {
  return graded(dim_, 2 * r_.size() - 1, r_.back(), sigma_);
}

std::array<double, 3> RadialGrid::boundary_derivative_stencil() const {
  const double h1 = r_[1] - r_[0];
  const double h2 = r_[2] - r_[1];
  return {-(2.0 * h1 + h2) / (h1 * (h1 + h2)), (h1 + h2) / (h1 * h2), -h1 / (h2 * (h1 + h2))};
}

RadialField::RadialField(GridPtr g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
  if (!grid) throw ConfigError("RadialField: null grid");
  if (values.size() != grid->size()) throw ConfigError("RadialField: size does not match grid");
}

RadialField RadialField::zeros(GridPtr g) {
  const std::size_t n = g->size();
  return RadialField(std::move(g), std::vector<double>(n, 0.0));
}

RadialField RadialField::sample(GridPtr g, const std::function<double(double)>& f) {
  std::vector<double> v(g->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f((*g)[i]);
  return RadialField(std::move(g), std::move(v));
}

double RadialField::sup_norm() const {
  double m = 0.0;
  for (double x : values) m = std::max(m, std::abs(x));
  return m;
}

void RadialField::require_finite(const char* what) const {
  for (double x : values) {
    if (!std::isfinite(x)) throw ConfigError(std::string(what) + ": non-finite value");
  }
}

std::vector<double> radial_gradient(const RadialGrid& grid, std::span<const double> u) {
  const std::size_t n = grid.size();
  if (u.size() != n) throw ConfigError("radial_gradient: size mismatch");
  std::vector<double> g(n);
  const auto r = grid.r();
  const auto s = grid.boundary_derivative_stencil();
  g[0] = s[0] * u[0] + s[1] * u[1] + s[2] * u[2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hm = r[i] - r[i - 1];
    const double hp = r[i + 1] - r[i];
    g[i] = (-hp * hp * u[i - 1] + (hp * hp - hm * hm) * u[i] + hm * hm * u[i + 1]) /
           (hm * hp * (hm + hp));
  }
  const double ha = r[n - 1] - r[n - 2];
  const double hb = r[n - 2] - r[n - 3];
  g[n - 1] = (2.0 * ha + hb) / (ha * (ha + hb)) * u[n - 1] - (ha + hb) / (ha * hb) * u[n - 2] +
             ha / (hb * (ha + hb)) * u[n - 3];
  return g;
}

double gradient_sup_norm(const RadialGrid& grid, std::span<const double> u) {
  double m = 0.0;
  for (double x : radial_gradient(grid, u)) m = std::max(m, std::abs(x));
  return m;
}

double interpolate(const RadialGrid& grid, std::span<const double> u, double r) {
  const auto nodes = grid.r();
  if (r <= nodes.front()) return u.front();
  if (r >= nodes.back()) return u.back();
  const auto it = std::upper_bound(nodes.begin(), nodes.end(), r);
  const std::size_t j = static_cast<std::size_t>(it - nodes.begin());
  const double w = (r - nodes[j - 1]) / (nodes[j] - nodes[j - 1]);
  return (1.0 - w) * u[j - 1] + w * u[j];
}

}  // namespace dynbc
