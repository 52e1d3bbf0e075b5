#pragma once

// Radial solver for the exterior problem with dynamical boundary condition
//   eps u_t = u_rr + (N - 1)/r u_r      on 1 < r < R,
//   du_b/dt = du/dr (1, t)              (u_b = u(1, t)),
// with u(r, 0) = phi(r), u_b(0) = phi_b. The outward normal of the exterior
// domain at r = 1 points to the origin, so d_nu = -d_r and the boundary law
// u_t + d_nu u = 0 reads du_b/dt = u_r(1). The boundary unknown is solved in
// the same tridiagonal system as the interior at every step.

#include <functional>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

#include "dynbc/radial_heat.hpp"

namespace dynbc {

struct ProblemSpec {
  int dim = 3;
  double epsilon = 0.1;
  std::function<double(double)> phi;
  double phi_b = 0.0;
  // Radii where phi jumps (used for cell-averaged sampling and quadrature).
  std::vector<double> phi_breakpoints;
  // sup_r r^{N-2} |phi(r)|, filled by make().
  double decay_M = 0.0;

  // Validates dim >= 3, eps in (0, 1), finite phi_b, and the decay of phi:
  // r^{N-2}|phi| is sampled on log-spaced radii up to 1e8 and must stay
  // finite and bounded. Throws ConfigError.
  static ProblemSpec make(int dim, double epsilon, std::function<double(double)> phi,
                          double phi_b, std::vector<double> breakpoints = {});
};

// phi = phi_b r^{-(N-2)}
ProblemSpec harmonic_profile_spec(int dim, double epsilon, double phi_b);
// phi = r^{2-N} for r > b, 0 otherwise; phi_b = 0.
ProblemSpec cutoff_profile_spec(int dim, double epsilon, double b);

// Grid values of f; nodes whose dual cell contains a breakpoint get the cell
// average so that jumps are represented to second order.
RadialField sample_profile(GridPtr grid, const std::function<double(double)>& f,
                           std::span<const double> breakpoints);

// 1 + 8 sqrt(T / eps), capped at 1e4.
double default_outer_radius(double horizon, double epsilon);
GridPtr default_grid(int dim, std::size_t nodes, double horizon, double epsilon,
                     double sigma = 3.0);

enum class TimeScale {
  physical,  // eps u_t = Lap u, du_b/dt = u_r, steps in t
  fast,      // u_tau = Lap u, du_b/dtau = eps u_r, steps in tau = t / eps
};

struct DynBCConfig {
  HeatStepperConfig stepper;
  TimeScale time_scale = TimeScale::physical;
};

// Stepper defaults for a given eps: dt0 = 1e-3 eps in physical time.
DynBCConfig default_dynbc_config(double epsilon);

// Discretization knobs shared by the sweep scenarios.
struct Resolution {
  std::size_t nodes = 2000;
  double sigma = 3.0;
  // Truncation radius; 0 selects default_outer_radius(T, eps).
  double R = 0.0;
  double theta = 0.5;
  // dt0 = dt0_factor * eps (physical time).
  double dt0_factor = 1e-3;
  double dt_growth = 1.05;
  double dt_max = std::numeric_limits<double>::infinity();

  double outer_radius(double horizon, double epsilon) const;
  GridPtr grid(int dim, double horizon, double epsilon) const;
  DynBCConfig dynbc(double epsilon) const;
  // R - 1 doubled, 2n - 1 nodes (same spacing near r = 1).
  Resolution doubled_radius(double horizon, double epsilon) const;
  // Every interval halved: 2n - 1 nodes, dt0 and dt_max halved, growth
  // replaced by its square root (two steps per coarse step).
  Resolution halved_step() const;
};

struct DynBCState {
  RadialField interior;
  double boundary_value = 0.0;
  double time = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DynBCState> states;
  std::size_t steps = 0;
  // max over steps of |(u_b^{n+1} - u_b^n)/dt - theta-averaged u_r(1)|
  double boundary_residual = 0.0;
};

// Samples at every entry of sample_times (increasing, inside (0, T]).
// Throws ConfigError on invalid input, SolverError on a non-finite state.
Trajectory solve_dynbc(const ProblemSpec& spec, double horizon,
                       std::span<const double> sample_times, GridPtr grid,
                       const DynBCConfig& cfg);

// Radial sample lattice for error functionals: `count` equispaced radii.
std::vector<double> radial_lattice(double r_min, double r_max, int count = 41);

// sup over lattice radii in [r_min, r_max] and sampled times in [t1, t2] of
// |u(r, t) - phi_b (e^t r)^{-(N-2)}|. Throws ConfigError if no sample time
// falls in the window.
double error_vs_limit(const Trajectory& traj, const ProblemSpec& spec, double r_min,
                      double r_max, double t1, double t2);

// inf of u over the same kind of window.
double inf_over_window(const Trajectory& traj, double r_min, double r_max, double t1, double t2);

// CSV with header "t,r,u", one row per sampled time and grid node.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);

}  // namespace dynbc
