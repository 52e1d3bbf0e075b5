#include "dynbc/lower_bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dynbc/errors.hpp"

namespace dynbc {

void LowerBoundSpec::validate() const {
  if (dim < 3) throw ConfigError("LowerBoundSpec: dimension must be >= 3");
  if (!(b > 1.0)) throw ConfigError("LowerBoundSpec: b must exceed 1");
  if (!(r_min > 1.0 && r_max >= r_min)) throw ConfigError("LowerBoundSpec: need 1 < r_min <= r_max");
  if (!(t1 > 0.0 && t2 >= t1)) throw ConfigError("LowerBoundSpec: need 0 < t1 <= t2");
}

double LowerBoundSpec::datum(double r) const { return r > b ? std::pow(r, 2.0 - dim) : 0.0; }

ProblemSpec LowerBoundSpec::problem(double epsilon) const {
  validate();
  return cutoff_profile_spec(dim, epsilon, b);
}

HeatStepperConfig z_stepper() {
  HeatStepperConfig cfg;
  cfg.dt_initial = 1e-3;
  cfg.dt_growth = 1.1;
  return cfg;
}

std::vector<RadialField> heat_profile_z(const LowerBoundSpec& spec,
                                        std::span<const double> times, GridPtr grid,
                                        const HeatStepperConfig& cfg) {
  spec.validate();
  const double bp[1] = {spec.b};
  const RadialField phi = sample_profile(grid, [&](double r) { return spec.datum(r); }, bp);
  return evolve_s1_samples(phi, times, cfg);
}

RadialField heat_profile_z(const LowerBoundSpec& spec, double t, GridPtr grid,
                           const HeatStepperConfig& cfg) {
  const double times[1] = {t};
  return std::move(heat_profile_z(spec, times, std::move(grid), cfg).front());
}

double z_exact_3d(const LowerBoundSpec& spec, double r, double t) {
  if (spec.dim != 3) throw ConfigError("z_exact_3d: N = 3 only");
  const double bp[1] = {spec.b};
  return exact_s1_3d([&](double rho) { return spec.datum(rho); }, r, t, bp);
}

double subsolution(const LowerBoundSpec& spec, double epsilon, double r, double t,
                   std::size_t nodes) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ConfigError("subsolution: epsilon in (0, 1]");
  const double tau = t / epsilon;
  const double R = std::max(1.0 + 8.0 * std::sqrt(tau), 2.0 * r + spec.b);
  auto grid = RadialGrid::graded(spec.dim, nodes, std::min(R, 1e4), 3.0);
  const RadialField z = heat_profile_z(spec, tau, grid);
  return interpolate(*grid, z.values, r);
}

PlateauCertificate plateau_certificate(const LowerBoundSpec& spec, double tau1, double tau2,
                                  int time_samples, std::size_t nodes) {
  spec.validate();
  if (!(tau1 > 0.0 && tau2 >= tau1)) throw ConfigError("plateau_certificate: need 0 < tau1 <= tau2");
  if (time_samples < 1) throw ConfigError("plateau_certificate: need at least one time");

  std::vector<double> times;
  if (tau2 == tau1 || time_samples == 1) {
    times.push_back(tau1);
  } else {
    for (int k = 0; k < time_samples; ++k) {
      times.push_back(tau1 * std::pow(tau2 / tau1, k / (time_samples - 1.0)));
    }
    times.back() = tau2;
  }
  const double R = std::min(1.0 + 8.0 * std::sqrt(tau2), 1e4);
  auto grid = RadialGrid::graded(spec.dim, nodes, std::max(R, 2.0 * spec.r_max + spec.b), 3.0);
  const auto z = heat_profile_z(spec, times, grid);
  const auto radii = radial_lattice(spec.r_min, spec.r_max);
  const double power = 0.5 * spec.dim - 1.0;

  PlateauCertificate out;
  out.certificate = std::numeric_limits<double>::infinity();
  out.times = times;
  for (std::size_t k = 0; k < times.size(); ++k) {
    double m = std::numeric_limits<double>::infinity();
    for (double r : radii) {
      const double v = interpolate(*grid, z[k].values, r) * std::pow(times[k], power);
      if (v < m) m = v;
      if (v < out.certificate) {
        out.certificate = v;
        out.argmin_r = r;
        out.argmin_t = times[k];
      }
    }
    out.scaled_min.push_back(m);
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] >= tau2 / 10.0 * (1.0 - 1e-12)) {
      lo = std::min(lo, out.scaled_min[k]);
      hi = std::max(hi, out.scaled_min[k]);
    }
  }
  out.last_decade_variation = hi > 0.0 ? (hi - lo) / hi : 0.0;
  if (!(out.certificate > 0.0)) {
    std::ostringstream msg;
    msg << "plateau_certificate: z t^{N/2-1} = " << out.certificate << " at r = " << out.argmin_r
        << ", t = " << out.argmin_t;
    throw CertificateFailure(msg.str());
  }
  return out;
}

namespace {

std::vector<double> window_times(double t1, double t2, int count) {
  std::vector<double> out;
  if (count <= 1 || t2 == t1) return {t1};
  for (int k = 0; k < count; ++k) out.push_back(t1 + (t2 - t1) * k / (count - 1.0));
  out.back() = t2;
  return out;
}

}  // namespace

LowerRatePoint lower_rate_point(const LowerBoundSpec& spec, double epsilon,
                                const Resolution& res, int time_samples) {
  const ProblemSpec problem = spec.problem(epsilon);
  const auto times = window_times(spec.t1, spec.t2, time_samples);
  const double T = spec.t2;

  auto run = [&](const Resolution& r) {
    return solve_dynbc(problem, T, times, r.grid(spec.dim, T, epsilon), r.dynbc(epsilon));
  };
  const Trajectory coarse = run(res);
  const Resolution fine_res = res.halved_step();
  const Trajectory fine = run(fine_res);
  const Trajectory wide = run(res.doubled_radius(T, epsilon));

  LowerRatePoint p;
  p.epsilon = epsilon;
  p.inf_u = inf_over_window(coarse, spec.r_min, spec.r_max, spec.t1, spec.t2);
  p.inf_u_refined = inf_over_window(fine, spec.r_min, spec.r_max, spec.t1, spec.t2);
  p.inf_u_wide = inf_over_window(wide, spec.r_min, spec.r_max, spec.t1, spec.t2);
  const auto& grid = *coarse.states.front().interior.grid;
  p.nodes = grid.size();
  p.R = grid.outer_radius();
  p.dt0 = res.dt0_factor * epsilon;

  // Richardson estimate at the coarse nodes (even-indexed fine nodes).
  double rich = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const auto& uc = coarse.states[k].interior.values;
    const auto& uf = fine.states[k].interior.values;
    for (std::size_t i = 0; i < uc.size(); ++i) rich = std::max(rich, std::abs(uc[i] - uf[2 * i]));
  }
  p.richardson_estimate = rich;

  // Subsolution on the same grid at the rescaled times.
  std::vector<double> tau(times);
  for (double& t : tau) t /= epsilon;
  HeatStepperConfig zc = z_stepper();
  zc.theta = res.theta;
  zc.dt_growth = res.dt_growth;
  const auto z = heat_profile_z(spec, tau, coarse.states.front().interior.grid, zc);
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < times.size(); ++k) {
    const auto& u = coarse.states[k].interior.values;
    for (std::size_t i = 0; i < u.size(); ++i) margin = std::min(margin, u[i] - z[k].values[i]);
  }
  p.comparison_margin = margin;
  return p;
}

}  // namespace dynbc
