#pragma once

// Comparison constructions for the cutoff datum phi = r^{2-N} 1_{r > b},
// phi_b = 0. z solves the Dirichlet heat equation from phi; z(r, t/eps) is a
// subsolution of the dynamic-boundary problem and decays like t^{1 - N/2}.

#include <span>
#include <vector>

#include "dynbc/dynbc_solver.hpp"

namespace dynbc {

struct LowerBoundSpec {
  int dim = 3;
  double b = 2.0;
  // Compact set [r_min, r_max] x [t1, t2].
  double r_min = 1.5;
  double r_max = 2.0;
  double t1 = 1.0;
  double t2 = 2.0;

  // Throws ConfigError unless dim >= 3, b > 1, 1 < r_min <= r_max, 0 < t1 <= t2.
  void validate() const;
  ProblemSpec problem(double epsilon) const;
  double datum(double r) const;
};

// Stepper for z: dt0 = 1e-3, growth 1.1 (heat time).
HeatStepperConfig z_stepper();

// z(., t_k) for increasing t_k > 0 on the given grid.
std::vector<RadialField> heat_profile_z(const LowerBoundSpec& spec,
                                        std::span<const double> times, GridPtr grid,
                                        const HeatStepperConfig& cfg = z_stepper());
RadialField heat_profile_z(const LowerBoundSpec& spec, double t, GridPtr grid,
                           const HeatStepperConfig& cfg = z_stepper());

// z by the image-method oracle (N = 3 only).
double z_exact_3d(const LowerBoundSpec& spec, double r, double t);

// z(r, t/eps), on a default grid for the rescaled time.
double subsolution(const LowerBoundSpec& spec, double epsilon, double r, double t,
                   std::size_t nodes = 2000);

struct PlateauCertificate {
  // min over samples of z(r, t) t^{N/2 - 1}
  double certificate = 0.0;
  double argmin_r = 0.0;
  double argmin_t = 0.0;
  // (max - min)/max of the per-time minimum over the last decade of t
  double last_decade_variation = 0.0;
  std::vector<double> times;
  std::vector<double> scaled_min;  // per-time min over the radial lattice
};

// Samples K_r on a 41-point lattice and [tau1, tau2] on `time_samples`
// log-spaced times. Throws CertificateFailure if the certificate is <= 0.
PlateauCertificate plateau_certificate(const LowerBoundSpec& spec, double tau1, double tau2,
                                  int time_samples = 61, std::size_t nodes = 2000);

struct LowerRatePoint {
  double epsilon = 0.0;
  // inf over the compact set of u_eps
  double inf_u = 0.0;
  // min over grid nodes and window times of u_eps - z(., t/eps)
  double comparison_margin = 0.0;
  // max |u_h - u_{h/2}| over the same samples
  double richardson_estimate = 0.0;
  // inf_u at halved step and at doubled radius
  double inf_u_refined = 0.0;
  double inf_u_wide = 0.0;
  std::size_t nodes = 0;
  double R = 0.0;
  double dt0 = 0.0;
};

// One ladder entry of the lower-rate experiment with Richardson checks.
LowerRatePoint lower_rate_point(const LowerBoundSpec& spec, double epsilon,
                                const Resolution& res, int time_samples = 21);

}  // namespace dynbc
