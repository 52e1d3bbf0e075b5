#include "dynbc/sphere_quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "dynbc/errors.hpp"

namespace dynbc {

GaussRule1D gauss_gegenbauer(int n, double lambda) {
  if (n < 1) throw ConfigError("gauss_gegenbauer: n < 1");
  if (!(lambda > -0.5)) throw ConfigError("gauss_gegenbauer: lambda <= -1/2");

  // Jacobi matrix of the orthonormal Gegenbauer polynomials: zero diagonal,
  // b_k^2 = k (k + 2 lambda - 1) / (4 (k + lambda) (k + lambda - 1)).
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) {
    const double kk = k;
    sub(k - 1) =
        std::sqrt(kk * (kk + 2.0 * lambda - 1.0) / (4.0 * (kk + lambda) * (kk + lambda - 1.0)));
  }
  const double mu0 = std::sqrt(std::numbers::pi) * std::tgamma(lambda + 0.5) /
                     std::tgamma(lambda + 1.0);

  GaussRule1D rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = mu0;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw SolverError("gauss_gegenbauer: eigensolver failed");
  for (int i = 0; i < n; ++i) {
    rule.nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    rule.weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
  }
  // Symmetrize: the rule is exactly symmetric about 0.
  for (int i = 0; i < n / 2; ++i) {
    const auto a = static_cast<std::size_t>(i);
    const auto b = static_cast<std::size_t>(n - 1 - i);
    const double x = 0.5 * (rule.nodes[b] - rule.nodes[a]);
    const double w = 0.5 * (rule.weights[a] + rule.weights[b]);
    rule.nodes[a] = -x;
    rule.nodes[b] = x;
    rule.weights[a] = w;
    rule.weights[b] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

std::size_t QuadratureRule::size() const {
  std::size_t n = az_cos_.size();
  for (const auto& g : polar_) n *= g.nodes.size();
  return n;
}

PointN QuadratureRule::zero_point() const {
  std::array<double, kMaxDim> c{};
  return PointN(std::span<const double>(c.data(), static_cast<std::size_t>(dim_)));
}

QuadratureRule build_rule(int dim, int level) {
  if (dim < 3 || dim > 5) {
    throw ConfigError("build_rule: unsupported dimension " + std::to_string(dim));
  }
  if (level < 1) throw ConfigError("build_rule: level must be >= 1");

  QuadratureRule rule;
  rule.dim_ = dim;
  rule.level_ = level;
  const int n_polar = 16 * level;
  const int n_az = 32 * level;
  // Layer j peels S^m, m = dim - 1 - j, weight (1 - u^2)^{(m - 2)/2}.
  for (int m = dim - 1; m >= 2; --m) {
    rule.polar_.push_back(gauss_gegenbauer(n_polar, 0.5 * (m - 1)));
  }
  rule.az_cos_.resize(static_cast<std::size_t>(n_az));
  rule.az_sin_.resize(static_cast<std::size_t>(n_az));
  const double h = 2.0 * std::numbers::pi / n_az;
  for (int j = 0; j < n_az; ++j) {
    rule.az_cos_[static_cast<std::size_t>(j)] = std::cos(h * (j + 0.5));
    rule.az_sin_[static_cast<std::size_t>(j)] = std::sin(h * (j + 0.5));
  }
  rule.exactness_ = std::min(2 * n_polar - 1, n_az - 1);
  return rule;
}

double total_weight(const QuadratureRule& rule) {
  double s = 0.0;
  rule.for_each_node([&](const SpherePoint&, double w) { s += w; });
  return s;
}

int max_adaptive_level(int dim) {
  switch (dim) {
    case 3: return 64;
    case 4: return 8;
    case 5: return 4;
    default: throw ConfigError("max_adaptive_level: unsupported dimension");
  }
}

AdaptiveResult integrate_adaptive(int dim, const std::function<double(const SpherePoint&)>& f,
                                  int start_level, double tol, int max_level) {
  if (start_level < 1 || start_level > max_level) {
    throw ConfigError("integrate_adaptive: bad level range");
  }
  AdaptiveResult res;
  res.level = start_level;
  res.value = integrate(build_rule(dim, start_level), f);
  for (int level = 2 * start_level; level <= max_level; level *= 2) {
    const double v = integrate(build_rule(dim, level), f);
    res.last_change = std::abs(v - res.value);
    res.value = v;
    res.level = level;
    if (res.last_change <= tol) return res;
  }
  throw SolverError("integrate_adaptive: no agreement to " + std::to_string(tol) +
                    " up to level " + std::to_string(max_level) + " (last change " +
                    std::to_string(res.last_change) + ")");
}

AdaptiveResult integrate_kernel_adaptive(int dim, double dilated_radius,
                                         const std::function<double(const SpherePoint&)>& f,
                                         double scale) {
  const int start = dilated_radius < 1.1 ? 2 : 1;
  return integrate_adaptive(dim, f, start, 1e-7 * std::abs(scale), max_adaptive_level(dim));
}

}  // namespace dynbc
