#pragma once

// Dirichlet heat semigroup S1(t) on the exterior of the unit ball, restricted
// to radial data:
//   u_t = u_rr + (N - 1)/r u_r  on (1, R),  u(1, t) = 0,
// with a Dirichlet condition at the truncation radius R. Discretized by a
// theta-scheme (Crank-Nicolson by default) on a graded grid with geometric
// time steps. An exact image-method evaluation for N = 3 serves as oracle.

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "dynbc/radial_grid.hpp"

namespace dynbc {

enum class FarBoundary { dirichlet_frozen, dirichlet_zero };

struct HeatStepperConfig {
  double theta = 0.5;
  double dt_initial = 1e-5;
  double dt_growth = 1.05;
  // Upper cap on the geometric step sequence.
  double dt_max = std::numeric_limits<double>::infinity();
  // Leading backward-Euler steps that damp the stiff modes excited by
  // incompatible or discontinuous data before Crank-Nicolson takes over.
  int startup_implicit_steps = 4;
  FarBoundary far_bc = FarBoundary::dirichlet_frozen;

  // Throws ConfigError: theta in [1/2, 1], dt_initial > 0, dt_growth in
  // [1, 1.2], dt_max > 0, startup_implicit_steps >= 0.
  void validate() const;
};

// Times 0 = t_0 < t_1 < ... < t_K = horizon following dt_k = dt0 * growth^k
// (capped at dt_max) and passing exactly through every entry of `hit` that
// lies in (0, horizon]. A step that would leave less than a quarter step
// before a target is stretched to land on it. Distinct targets closer than
// 1e-10 * horizon (to each other or to the horizon) throw ConfigError.
std::vector<double> build_time_mesh(double horizon, std::span<const double> hit, double dt0,
                                    double growth, double dt_max);
std::vector<double> build_time_mesh(double horizon, std::span<const double> hit,
                                    const HeatStepperConfig& cfg);

// Left boundary treatment for one step.
struct LeftBoundary {
  enum class Kind { dirichlet, dynamic };
  Kind kind = Kind::dirichlet;
  // dirichlet: prescribed u(1) at the new time level.
  double value = 0.0;
  // dynamic: du(1)/dt = rate * du/dr(1) (one-sided second-order stencil),
  // solved implicitly together with the interior.
  double rate = 1.0;

  static LeftBoundary dirichlet(double v) { return {Kind::dirichlet, v, 0.0}; }
  static LeftBoundary dynamic(double rate) { return {Kind::dynamic, 0.0, rate}; }
};

// theta-scheme for  u_t = kappa * (u_rr + (N-1)/r u_r) + f  on a fixed grid.
class RadialThetaSolver {
 public:
  RadialThetaSolver(GridPtr grid, double kappa);

  const RadialGrid& grid() const { return *grid_; }
  double kappa() const { return kappa_; }

  // Advances u in place by dt. `src_old`/`src_new` are the forcing at the old
  // and new time level (empty span = no forcing); `right_value` is the
  // Dirichlet value at r = R.
  void step(std::span<double> u, double dt, double theta, const LeftBoundary& left,
            double right_value, std::span<const double> src_old = {},
            std::span<const double> src_new = {});

  // (u_rr + (N-1)/r u_r) at interior nodes; endpoints are set to 0.
  std::vector<double> apply_laplacian(std::span<const double> u) const;

 private:
  GridPtr grid_;
  double kappa_;
  std::vector<double> lo_, di_, up_;  // interior stencil, index = node
  std::array<double, 3> flux_;
  std::vector<double> a_, b_, c_, d_;  // work arrays
};

// Thomas algorithm; overwrites d with the solution. a[0] and c[n-1] unused.
void solve_tridiagonal(std::span<const double> a, std::span<double> b, std::span<const double> c,
                       std::span<double> d);

// S1(t) phi. The boundary value of phi is ignored (overwritten by u(1) = 0).
// Throws ConfigError for non-finite input or t <= 0.
RadialField evolve_s1(const RadialField& phi, double t, const HeatStepperConfig& cfg);

// S1(t_k) phi for every requested (increasing, positive) time, computed in a
// single pass.
std::vector<RadialField> evolve_s1_samples(const RadialField& phi, std::span<const double> times,
                                           const HeatStepperConfig& cfg);

// Discrete Duhamel march: v_t = kappa * Lap_r v + f(r, t_n) on the given time
// mesh with v(1) = 0. `source(n, out)` fills the forcing at mesh time t_n;
// `far(n)` gives v(R, t_n) (empty: frozen at the initial value). Returns v at
// every mesh time.
std::vector<std::vector<double>> duhamel_march(
    const RadialField& initial, double kappa, std::span<const double> mesh,
    const std::function<void(std::size_t, std::span<double>)>& source,
    const HeatStepperConfig& cfg, const std::function<double(std::size_t)>& far = {});

// Exact S1(t) phi at radius r for N = 3 by the image method:
//   (1/r) int_1^inf G(r - 1, rho - 1, t) rho phi(rho) drho,
//   G(a, b, t) = (4 pi t)^{-1/2} [e^{-(a-b)^2/4t} - e^{-(a+b)^2/4t}],
// by adaptive Gauss-Kronrod quadrature split at r and at `breakpoints`
// (discontinuities of phi). Throws ConfigError for t <= 0.
double exact_s1_3d(const std::function<double(double)>& phi, double r, double t,
                   std::span<const double> breakpoints = {});

// du/dr at r = 1 by the one-sided second-order stencil of the grid.
double grad_s1_boundary(const RadialField& field);

}  // namespace dynbc
