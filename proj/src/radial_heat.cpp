#include "dynbc/radial_heat.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "dynbc/errors.hpp"

namespace dynbc {

void HeatStepperConfig::validate() const {
  if (!(theta >= 0.5 && theta <= 1.0)) throw ConfigError("theta must lie in [0.5, 1]");
  if (!(dt_initial > 0.0)) throw ConfigError("dt_initial must be positive");
  if (!(dt_growth >= 1.0 && dt_growth <= 1.2)) throw ConfigError("dt_growth must lie in [1, 1.2]");
  if (!(dt_max > 0.0)) throw ConfigError("dt_max must be positive");
  if (startup_implicit_steps < 0) throw ConfigError("startup_implicit_steps must be >= 0");
}

std::vector<double> build_time_mesh(double horizon, std::span<const double> hit, double dt0,
                                    double growth, double dt_max) {
  if (!(horizon > 0.0)) throw ConfigError("build_time_mesh: horizon must be positive");
  if (!(dt0 > 0.0)) throw ConfigError("build_time_mesh: dt0 must be positive");
  std::vector<double> targets;
  for (double h : hit) {
    if (h > 0.0 && h < horizon) targets.push_back(h);
  }
  targets.push_back(horizon);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  for (std::size_t k = 1; k < targets.size(); ++k) {
    if (targets[k] - targets[k - 1] < 1e-10 * horizon) {
      throw ConfigError("build_time_mesh: hit times closer than 1e-10 T to each other or to T");
    }
  }

  std::vector<double> times{0.0};
  double t = 0.0;
  double dt = std::min(dt0, dt_max);
  std::size_t k = 0;
  while (k < targets.size()) {
    const double target = targets[k];
    double next = t + dt;
    // Land on the target when the step reaches it or would leave a sliver.
    if (next >= target - 0.25 * dt) {
      next = target;
      ++k;
    }
    times.push_back(next);
    t = next;
    dt = std::min(dt * growth, dt_max);
  }
  return times;
}

std::vector<double> build_time_mesh(double horizon, std::span<const double> hit,
                                    const HeatStepperConfig& cfg) {
  cfg.validate();
  return build_time_mesh(horizon, hit, cfg.dt_initial, cfg.dt_growth, cfg.dt_max);
}

void solve_tridiagonal(std::span<const double> a, std::span<double> b, std::span<const double> c,
                       std::span<double> d) {
  const std::size_t n = d.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = a[i] / b[i - 1];
    b[i] -= m * c[i - 1];
    d[i] -= m * d[i - 1];
  }
  d[n - 1] /= b[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) d[i] = (d[i] - c[i] * d[i + 1]) / b[i];
}

RadialThetaSolver::RadialThetaSolver(GridPtr grid, double kappa)
    : grid_(std::move(grid)), kappa_(kappa) {
  if (!grid_) throw ConfigError("RadialThetaSolver: null grid");
  const std::size_t n = grid_->size();
  const auto r = grid_->r();
  const double nm1 = grid_->dim() - 1.0;
  lo_.assign(n, 0.0);
  di_.assign(n, 0.0);
  up_.assign(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hm = r[i] - r[i - 1];
    const double hp = r[i + 1] - r[i];
    const double c = nm1 / r[i];
    const double s = hm + hp;
    lo_[i] = 2.0 / (hm * s) - c * hp / (hm * s);
    up_[i] = 2.0 / (hp * s) + c * hm / (hp * s);
    di_[i] = -2.0 / (hm * hp) + c * (hp - hm) / (hm * hp);
  }
  flux_ = grid_->boundary_derivative_stencil();
  a_.resize(n);
  b_.resize(n);
  c_.resize(n);
  d_.resize(n);
}

std::vector<double> RadialThetaSolver::apply_laplacian(std::span<const double> u) const {
  const std::size_t n = grid_->size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out[i] = lo_[i] * u[i - 1] + di_[i] * u[i] + up_[i] * u[i + 1];
  }
  return out;
}

void RadialThetaSolver::step(std::span<double> u, double dt, double theta,
                             const LeftBoundary& left, double right_value,
                             std::span<const double> src_old, std::span<const double> src_new) {
  const std::size_t n = grid_->size();
  const double impl = theta * dt * kappa_;
  const double expl = (1.0 - theta) * dt * kappa_;
  const bool forced = !src_old.empty() || !src_new.empty();

  for (std::size_t i = 1; i + 1 < n; ++i) {
    a_[i] = -impl * lo_[i];
    b_[i] = 1.0 - impl * di_[i];
    c_[i] = -impl * up_[i];
    double rhs = u[i] + expl * (lo_[i] * u[i - 1] + di_[i] * u[i] + up_[i] * u[i + 1]);
    if (forced) {
      const double fo = src_old.empty() ? 0.0 : src_old[i];
      const double fn = src_new.empty() ? 0.0 : src_new[i];
      rhs += dt * (theta * fn + (1.0 - theta) * fo);
    }
    d_[i] = rhs;
  }

  a_[n - 1] = 0.0;
  b_[n - 1] = 1.0;
  d_[n - 1] = right_value;

  if (left.kind == LeftBoundary::Kind::dirichlet) {
    b_[0] = 1.0;
    c_[0] = 0.0;
    d_[0] = left.value;
  } else {
    const double gi = theta * dt * left.rate;
    const double ge = (1.0 - theta) * dt * left.rate;
    double c00 = 1.0 - gi * flux_[0];
    double c01 = -gi * flux_[1];
    const double c02 = -gi * flux_[2];
    double rhs0 = u[0] + ge * (flux_[0] * u[0] + flux_[1] * u[1] + flux_[2] * u[2]);
    if (n == 3) {
      // Row 1 is the last interior row; u_2 is the Dirichlet value.
      rhs0 -= c02 * right_value;
    } else {
      // Eliminate u_2 with row 1 so the system stays tridiagonal.
      const double m = c02 / c_[1];
      c00 -= m * a_[1];
      c01 -= m * b_[1];
      rhs0 -= m * d_[1];
    }
    b_[0] = c00;
    c_[0] = c01;
    d_[0] = rhs0;
  }
  a_[0] = 0.0;
  c_[n - 1] = 0.0;

  solve_tridiagonal(a_, b_, c_, d_);
  std::copy(d_.begin(), d_.end(), u.begin());
}

namespace {

double far_value(const RadialField& phi, FarBoundary bc) {
  return bc == FarBoundary::dirichlet_frozen ? phi.values.back() : 0.0;
}

}  // namespace

std::vector<RadialField> evolve_s1_samples(const RadialField& phi, std::span<const double> times,
                                           const HeatStepperConfig& cfg) {
  cfg.validate();
  if (!phi.grid) throw ConfigError("evolve_s1: field without grid");
  phi.require_finite("evolve_s1");
  if (times.empty()) return {};
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(times[k] > 0.0) || (k > 0 && !(times[k] > times[k - 1]))) {
      throw ConfigError("evolve_s1: sample times must be positive and increasing");
    }
  }
  const auto mesh = build_time_mesh(times.back(), times, cfg);
  RadialThetaSolver solver(phi.grid, 1.0);
  std::vector<double> u = phi.values;
  u.front() = 0.0;
  const double right = far_value(phi, cfg.far_bc);
  u.back() = right;

  std::vector<RadialField> out;
  out.reserve(times.size());
  std::size_t next = 0;
  for (std::size_t k = 1; k < mesh.size(); ++k) {
    const double theta = static_cast<int>(k) <= cfg.startup_implicit_steps ? 1.0 : cfg.theta;
    solver.step(u, mesh[k] - mesh[k - 1], theta, LeftBoundary::dirichlet(0.0), right);
    while (next < times.size() && mesh[k] == times[next]) {
      out.emplace_back(phi.grid, u);
      ++next;
    }
  }
  if (out.size() != times.size()) throw SolverError("evolve_s1: missed a sample time");
  for (const auto& f : out) {
    for (double x : f.values) {
      if (!std::isfinite(x)) throw SolverError("evolve_s1: non-finite state");
    }
  }
  return out;
}

RadialField evolve_s1(const RadialField& phi, double t, const HeatStepperConfig& cfg) {
  if (!(t > 0.0)) throw ConfigError("evolve_s1: t must be positive");
  const double times[1] = {t};
  return std::move(evolve_s1_samples(phi, times, cfg).front());
}

std::vector<std::vector<double>> duhamel_march(
    const RadialField& initial, double kappa, std::span<const double> mesh,
    const std::function<void(std::size_t, std::span<double>)>& source,
    const HeatStepperConfig& cfg, const std::function<double(std::size_t)>& far) {
  cfg.validate();
  initial.require_finite("duhamel_march");
  if (mesh.size() < 2 || mesh.front() != 0.0) throw ConfigError("duhamel_march: bad mesh");
  const std::size_t n = initial.size();
  RadialThetaSolver solver(initial.grid, kappa);
  std::vector<std::vector<double>> states;
  states.reserve(mesh.size());
  std::vector<double> u = initial.values;
  u.front() = 0.0;
  if (far) u.back() = far(0);
  const double frozen = u.back();
  states.push_back(u);

  std::vector<double> f_old(n, 0.0), f_new(n, 0.0);
  if (source) source(0, f_old);
  for (std::size_t k = 1; k < mesh.size(); ++k) {
    if (source) source(k, f_new);
    const double theta = static_cast<int>(k) <= cfg.startup_implicit_steps ? 1.0 : cfg.theta;
    const double right = far ? far(k) : frozen;
    if (source) {
      solver.step(u, mesh[k] - mesh[k - 1], theta, LeftBoundary::dirichlet(0.0), right, f_old,
                  f_new);
    } else {
      solver.step(u, mesh[k] - mesh[k - 1], theta, LeftBoundary::dirichlet(0.0), right);
    }
    states.push_back(u);
    std::swap(f_old, f_new);
  }
  for (double x : u) {
    if (!std::isfinite(x)) throw SolverError("duhamel_march: non-finite state");
  }
  return states;
}

double exact_s1_3d(const std::function<double(double)>& phi, double r, double t,
                   std::span<const double> breakpoints) {
  if (!(t > 0.0)) throw ConfigError("exact_s1_3d: t must be positive");
  if (!(r >= 1.0)) throw ConfigError("exact_s1_3d: r must be >= 1");
  const double a = r - 1.0;
  if (a == 0.0) return 0.0;
  const double sq = std::sqrt(t);
  const double norm = 1.0 / std::sqrt(4.0 * std::numbers::pi * t);
  auto integrand = [&](double rho) {
    const double b = rho - 1.0;
    // e^{-(a-b)^2/4t} - e^{-(a+b)^2/4t} = e^{-(a-b)^2/4t} (1 - e^{-ab/t})
    const double g = norm * std::exp(-(a - b) * (a - b) / (4.0 * t)) * -std::expm1(-a * b / t);
    return g * rho * phi(rho);
  };

  const double hi = r + 20.0 * sq + 1.0;
  std::vector<double> cuts{1.0, hi};
  for (double c : {r - 4.0 * sq, r, r + 4.0 * sq}) {
    if (c > 1.0 && c < hi) cuts.push_back(c);
  }
  for (double c : breakpoints) {
    if (c > 1.0 && c < hi) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, cuts[i],
                                                                          cuts[i + 1], 15, 1e-13);
  }
  return total / r;
}

double grad_s1_boundary(const RadialField& field) {
  if (!field.grid || field.size() < 3) throw ConfigError("grad_s1_boundary: grid too coarse");
  const auto s = field.grid->boundary_derivative_stencil();
  return s[0] * field.values[0] + s[1] * field.values[1] + s[2] * field.values[2];
}

}  // namespace dynbc
