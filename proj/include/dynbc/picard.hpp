#pragma once

// Fixed-point formulation for radial data and constant phi_b.
//
// Split u = v + w with
//   w(r, t) = r^{-(N-2)} [phi_b e^{-(N-2)t} - C(t)],
//   C(t)    = int_0^t e^{-(N-2)(t-s)} g(s) ds,   g = d_nu v(1) = -v_r(1),
// so that v(1, t) = 0 and
//   v_t = eps^{-1} Lap v - F1 + F2[v],   v(0) = Phi = phi - phi_b r^{-(N-2)},
//   F1(r, t) = -(N-2) phi_b e^{-(N-2)t} r^{-(N-2)},
//   F2[v](r, t) = r^{-(N-2)} [g(t) - (N-2) C(t)].
// The map Q[v] = S1(t/eps) Phi - D[phi_b] + Dt[v] solves this linear problem
// with the flux of the input v in F2. Duhamel integrals are realized by
// marching the forced equation on a shared geometric time mesh.

#include <cstddef>
#include <span>
#include <vector>

#include "dynbc/dynbc_solver.hpp"
#include "dynbc/errors.hpp"

namespace dynbc {

struct PicardConfig {
  // Exponential weight of the X norm; 0 selects L by the doubling search.
  double L = 0.0;
  double T = 1.0;
  int max_iter = 80;
  // Absolute tolerance on the X-norm increment.
  double tol = 1e-9;
  // Norm exponent; 0 selects 1 for N = 3 and 1.5 for N >= 4.
  double alpha = 0.0;
  // Throws ConfigError: T > 0, max_iter >= 1, tol > 0, L >= 0, and
  // alpha == 1 for N = 3, alpha in (1, 2) for N >= 4 (after defaulting).
  double resolved_alpha(int dim) const;
  void validate(int dim) const;
};

// Shared discretization of one fixed-point run.
struct PicardGrid {
  GridPtr grid;
  std::vector<double> mesh;  // 0 = t_0 < ... < t_K = T
  HeatStepperConfig stepper;
};

// Mesh on [0, T] through every time in `hit`, stepped by `stepper`.
PicardGrid make_picard_grid(GridPtr grid, double T, std::span<const double> hit,
                            const HeatStepperConfig& stepper);
// Graded grid with the default R for (T, eps) and dt0 = 1e-3 eps.
PicardGrid default_picard_grid(const ProblemSpec& spec, double T, std::size_t nodes,
                               std::span<const double> hit = {});

// Values of a radial function at every mesh time.
struct FieldSeries {
  GridPtr grid;
  std::vector<double> times;
  std::vector<std::vector<double>> values;

  std::size_t steps() const { return times.size(); }
};

// Boundary flux g(t_n) on the mesh, with its exponential convolution C(t_n).
struct FluxSeries {
  int dim = 3;
  std::vector<double> times;
  std::vector<double> g;
  std::vector<double> conv;
  // g ~ s^{-1/2} near 0 (Phi(1) != 0): the first cell uses the product
  // weight int_0^{t1} g = 2 t1 g(t1) and g(t_0) is not used.
  bool singular_start = false;

  // Builds conv by the recursive trapezoid rule
  //   C_{n+1} = e^{-(N-2)dt} C_n + dt/2 (e^{-(N-2)dt} g_n + g_{n+1}).
  static FluxSeries from_values(int dim, std::vector<double> times, std::vector<double> g,
                                bool singular_start);
  // g = -du/dr(1) of each stored field.
  static FluxSeries from_field(const FieldSeries& v, bool singular_start);

  // g and C at arbitrary t in [0, t_K] (linear g inside a cell). Throws
  // ConfigError outside the stored range.
  double g_at(double t) const;
  double conv_at(double t) const;
};

struct VWPair {
  FieldSeries v;
  FluxSeries g;
  FieldSeries w;
  double L = 0.0;
  double alpha = 1.0;
  int iterations = 0;
  std::vector<double> increments;
  // max over probes of ||Dt[p]||_X / ||p||_X at the selected L
  double contraction_ratio = 0.0;
  // ratio at every probed L of the doubling search
  std::vector<std::pair<double, double>> l_trace;
  // ||v* - v*'||_X for the fixed point reached from (r - 1) e^{-(r - 1)}
  double uniqueness_gap = 0.0;

  // v + w at mesh index n.
  std::vector<double> u_at(std::size_t n) const;
};

// Raised when the increments do not drop below tol within max_iter.
class PicardNonConvergence : public SolverError {
 public:
  PicardNonConvergence(const std::string& what, std::vector<double> history)
      : SolverError(what), history_(std::move(history)) {}
  const std::vector<double>& history() const { return history_; }

 private:
  std::vector<double> history_;
};

// Phi = phi - phi_b r^{-(N-2)} on the grid.
RadialField phi_effective(const ProblemSpec& spec, GridPtr grid);

// D[psi](t) = int_0^t S1((t-s)/eps) F1[psi](s) ds at every mesh time, psi
// constant.
FieldSeries d_eps_series(const ProblemSpec& spec, double psi, const PicardGrid& pg);
// D[psi] at the final mesh time.
RadialField d_eps(const ProblemSpec& spec, double psi, const PicardGrid& pg);

// F2 at radius r and time t from a stored flux series:
//   r^{-(N-2)} [g(t) - (N-2) C(t)].
double f2_radial(const FluxSeries& g, double r, double t);

// Dt[v] = int_0^t S1((t-s)/eps) F2[v](s) ds on the mesh.
FieldSeries d_tilde(const ProblemSpec& spec, const PicardGrid& pg, const FieldSeries& v,
                    bool singular_start = false);

// Q[v] on the mesh.
FieldSeries q_eps_step(const ProblemSpec& spec, const PicardGrid& pg, const FieldSeries& v);

// sup_n e^{-L t_n} E[v](t_n),
//   E = (1 + (t/eps)^{alpha/2}) |v|_inf + (t/eps)^{1/2} (1 + (t/eps)^{(alpha-1)/2}) |v_r|_inf.
double x_norm(const FieldSeries& v, double L, double alpha, double epsilon);

// phi_b (e^t r)^{-(N-2)} - int_0^t (e^{t-s} r)^{-(N-2)} g(s) ds.
double reconstruct_w(const ProblemSpec& spec, const FluxSeries& g, double t, double r);

// Runs the iteration from v0 = S1 Phi - D[phi_b]. Throws
// PicardNonConvergence, or SolverError when no L <= 2^10 contracts.
VWPair picard_solve(const ProblemSpec& spec, const PicardConfig& cfg, const PicardGrid& pg);

// Zero trajectory on the mesh.
FieldSeries zero_series(const PicardGrid& pg);
// a - b
FieldSeries difference(const FieldSeries& a, const FieldSeries& b);

}  // namespace dynbc
