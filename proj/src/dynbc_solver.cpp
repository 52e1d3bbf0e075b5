#include "dynbc/dynbc_solver.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "dynbc/errors.hpp"

namespace dynbc {

ProblemSpec ProblemSpec::make(int dim, double epsilon, std::function<double(double)> phi,
                              double phi_b, std::vector<double> breakpoints) {
  if (dim < 3) throw ConfigError("ProblemSpec: dimension must be >= 3");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("ProblemSpec: epsilon must lie in (0, 1)");
  if (!std::isfinite(phi_b)) throw ConfigError("ProblemSpec: phi_b must be finite");
  if (!phi) throw ConfigError("ProblemSpec: missing initial profile");

  const double p = dim - 2.0;
  double m_near = 0.0;
  double m_far = 0.0;
  double m_all = 0.0;
  constexpr int kProbes = 400;
  for (int k = 0; k <= kProbes; ++k) {
    const double r = std::pow(10.0, 8.0 * k / kProbes);
    const double v = std::pow(r, p) * std::abs(phi(r));
    if (!std::isfinite(v)) {
      throw ConfigError("ProblemSpec: r^{N-2}|phi| is not finite at r = " + std::to_string(r));
    }
    m_all = std::max(m_all, v);
    if (r <= 1e4) m_near = std::max(m_near, v);
    if (r >= 1e7) m_far = std::max(m_far, v);
  }
  if (m_far > 2.0 * m_near + 1e-300) {
    throw ConfigError("ProblemSpec: r^{N-2}|phi| grows at large r; decay bound fails");
  }

  ProblemSpec s;
  s.dim = dim;
  s.epsilon = epsilon;
  s.phi = std::move(phi);
  s.phi_b = phi_b;
  s.phi_breakpoints = std::move(breakpoints);
  s.decay_M = m_all;
  return s;
}

ProblemSpec harmonic_profile_spec(int dim, double epsilon, double phi_b) {
  const double p = dim - 2.0;
  return ProblemSpec::make(
      dim, epsilon, [phi_b, p](double r) { return phi_b * std::pow(r, -p); }, phi_b);
}

ProblemSpec cutoff_profile_spec(int dim, double epsilon, double b) {
  if (!(b > 1.0)) throw ConfigError("cutoff profile: b must exceed 1");
  const double p = dim - 2.0;
  return ProblemSpec::make(
      dim, epsilon, [b, p](double r) { return r > b ? std::pow(r, -p) : 0.0; }, 0.0, {b});
}

RadialField sample_profile(GridPtr grid, const std::function<double(double)>& f,
                           std::span<const double> breakpoints) {
  RadialField out = RadialField::sample(grid, f);
  if (breakpoints.empty()) return out;
  const auto r = grid->r();
  const std::size_t n = r.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double lo = 0.5 * (r[i - 1] + r[i]);
    const double hi = 0.5 * (r[i] + r[i + 1]);
    std::vector<double> cuts{lo};
    for (double b : breakpoints) {
      if (b > lo && b < hi) cuts.push_back(b);
    }
    if (cuts.size() == 1) continue;
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      s += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, cuts[k], cuts[k + 1],
                                                                        5, 1e-12);
    }
    out.values[i] = s / (hi - lo);
  }
  return out;
}

double default_outer_radius(double horizon, double epsilon) {
  return std::min(1.0 + 8.0 * std::sqrt(horizon / epsilon), 1e4);
}

GridPtr default_grid(int dim, std::size_t nodes, double horizon, double epsilon, double sigma) {
  return RadialGrid::graded(dim, nodes, default_outer_radius(horizon, epsilon), sigma);
}

DynBCConfig default_dynbc_config(double epsilon) {
  DynBCConfig cfg;
  cfg.stepper.dt_initial = 1e-3 * epsilon;
  return cfg;
}

double Resolution::outer_radius(double horizon, double epsilon) const {
  return R > 0.0 ? R : default_outer_radius(horizon, epsilon);
}

GridPtr Resolution::grid(int dim, double horizon, double epsilon) const {
  return RadialGrid::graded(dim, nodes, outer_radius(horizon, epsilon), sigma);
}

DynBCConfig Resolution::dynbc(double epsilon) const {
  DynBCConfig cfg;
  cfg.stepper.theta = theta;
  cfg.stepper.dt_initial = dt0_factor * epsilon;
  cfg.stepper.dt_growth = dt_growth;
  cfg.stepper.dt_max = dt_max;
  return cfg;
}

Resolution Resolution::doubled_radius(double horizon, double epsilon) const {
  Resolution r = *this;
  r.R = 1.0 + 2.0 * (outer_radius(horizon, epsilon) - 1.0);
  r.nodes = 2 * nodes - 1;
  return r;
}

Resolution Resolution::halved_step() const {
  Resolution r = *this;
  r.nodes = 2 * nodes - 1;
  r.dt0_factor = 0.5 * dt0_factor;
  r.dt_growth = std::sqrt(dt_growth);
  r.dt_max = 0.5 * dt_max;
  return r;
}

Trajectory solve_dynbc(const ProblemSpec& spec, double horizon,
                       std::span<const double> sample_times, GridPtr grid,
                       const DynBCConfig& cfg) {
  cfg.stepper.validate();
  if (!grid) throw ConfigError("solve_dynbc: null grid");
  if (grid->dim() != spec.dim) throw ConfigError("solve_dynbc: grid dimension mismatch");
  if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0)) {
    throw ConfigError("solve_dynbc: epsilon must lie in (0, 1)");
  }
  if (!(horizon > 0.0)) throw ConfigError("solve_dynbc: horizon must be positive");
  for (std::size_t k = 0; k < sample_times.size(); ++k) {
    const double t = sample_times[k];
    if (!(t > 0.0 && t <= horizon) || (k > 0 && !(t > sample_times[k - 1]))) {
      throw ConfigError("solve_dynbc: sample times must be increasing within (0, T]");
    }
  }

  const double eps = spec.epsilon;
  const bool fast = cfg.time_scale == TimeScale::fast;
  // Unit of the stepping variable measured in physical time.
  const double unit = fast ? eps : 1.0;
  const double kappa = fast ? 1.0 : 1.0 / eps;
  const double rate = fast ? eps : 1.0;

  std::vector<double> targets(sample_times.begin(), sample_times.end());
  for (double& t : targets) t /= unit;
  const auto mesh = build_time_mesh(horizon / unit, targets, cfg.stepper.dt_initial / unit,
                                    cfg.stepper.dt_growth, cfg.stepper.dt_max / unit);

  RadialField init = sample_profile(grid, spec.phi, spec.phi_breakpoints);
  init.require_finite("solve_dynbc");
  std::vector<double> u = init.values;
  u.front() = spec.phi_b;
  const double right =
      cfg.stepper.far_bc == FarBoundary::dirichlet_frozen ? spec.phi(grid->outer_radius()) : 0.0;
  u.back() = right;

  RadialThetaSolver solver(grid, kappa);
  const auto st = grid->boundary_derivative_stencil();
  auto flux = [&](const std::vector<double>& w) {
    return st[0] * w[0] + st[1] * w[1] + st[2] * w[2];
  };

  Trajectory traj;
  traj.times.reserve(sample_times.size());
  traj.states.reserve(sample_times.size());
  std::size_t next = 0;
  for (std::size_t k = 1; k < mesh.size(); ++k) {
    const double dt = mesh[k] - mesh[k - 1];
    const double theta =
        static_cast<int>(k) <= cfg.stepper.startup_implicit_steps ? 1.0 : cfg.stepper.theta;
    const double ub_old = u.front();
    const double f_old = flux(u);
    solver.step(u, dt, theta, LeftBoundary::dynamic(rate), right);
    const double f_new = flux(u);
    const double dt_phys = dt * unit;
    traj.boundary_residual =
        std::max(traj.boundary_residual, std::abs((u.front() - ub_old) / dt_phys -
                                                  (theta * f_new + (1.0 - theta) * f_old)));
    if (!std::isfinite(u.front()) || !std::isfinite(u[u.size() / 2])) {
      throw SolverError("solve_dynbc: non-finite state at t = " + std::to_string(mesh[k] * unit));
    }
    while (next < targets.size() && mesh[k] == targets[next]) {
      DynBCState s;
      s.interior = RadialField(grid, u);
      s.boundary_value = u.front();
      s.time = sample_times[next];
      s.interior.require_finite("solve_dynbc");
      traj.times.push_back(s.time);
      traj.states.push_back(std::move(s));
      ++next;
    }
  }
  traj.steps = mesh.size() - 1;
  if (next != targets.size()) throw SolverError("solve_dynbc: missed a sample time");
  return traj;
}

std::vector<double> radial_lattice(double r_min, double r_max, int count) {
  if (!(r_min >= 1.0 && r_max >= r_min) || count < 1) {
    throw ConfigError("radial_lattice: need 1 <= r_min <= r_max and count >= 1");
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] =
        count == 1 ? r_min : r_min + (r_max - r_min) * i / (count - 1.0);
  }
  return out;
}

namespace {

template <typename Visit>
void visit_window(const Trajectory& traj, double r_min, double r_max, double t1, double t2,
                  Visit&& visit) {
  const auto radii = radial_lattice(r_min, r_max);
  bool any = false;
  for (const auto& s : traj.states) {
    if (s.time < t1 * (1.0 - 1e-12) || s.time > t2 * (1.0 + 1e-12)) continue;
    any = true;
    const auto& g = *s.interior.grid;
    if (r_max > g.outer_radius()) throw ConfigError("window radius beyond the grid");
    for (double r : radii) visit(r, s.time, interpolate(g, s.interior.values, r));
  }
  if (!any) throw ConfigError("no sampled time inside the requested window");
}

}  // namespace

double error_vs_limit(const Trajectory& traj, const ProblemSpec& spec, double r_min,
                      double r_max, double t1, double t2) {
  const double p = spec.dim - 2.0;
  double err = 0.0;
  visit_window(traj, r_min, r_max, t1, t2, [&](double r, double t, double u) {
    err = std::max(err, std::abs(u - spec.phi_b * std::pow(std::exp(t) * r, -p)));
  });
  return err;
}

double inf_over_window(const Trajectory& traj, double r_min, double r_max, double t1, double t2) {
  double m = std::numeric_limits<double>::infinity();
  visit_window(traj, r_min, r_max, t1, t2, [&](double, double, double u) { m = std::min(m, u); });
  return m;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  const auto old = out.precision(17);
  out << "t,r,u\n";
  for (const auto& s : traj.states) {
    const auto r = s.interior.grid->r();
    for (std::size_t i = 0; i < r.size(); ++i) {
      out << s.time << ',' << r[i] << ',' << s.interior.values[i] << '\n';
    }
  }
  out.precision(old);
}

}  // namespace dynbc
