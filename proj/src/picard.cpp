#include "dynbc/picard.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace dynbc {

double PicardConfig::resolved_alpha(int dim) const {
  if (alpha != 0.0) return alpha;
  return dim == 3 ? 1.0 : 1.5;
}

void PicardConfig::validate(int dim) const {
  if (!(T > 0.0)) throw ConfigError("PicardConfig: T must be positive");
  if (max_iter < 1) throw ConfigError("PicardConfig: max_iter must be >= 1");
  if (!(tol > 0.0)) throw ConfigError("PicardConfig: tol must be positive");
  if (!(L >= 0.0)) throw ConfigError("PicardConfig: L must be >= 0");
  const double a = resolved_alpha(dim);
  if (dim == 3 && a != 1.0) throw ConfigError("PicardConfig: alpha must be 1 for N = 3");
  if (dim >= 4 && !(a > 1.0 && a < 2.0)) {
    throw ConfigError("PicardConfig: alpha must lie in (1, 2) for N >= 4");
  }
}

PicardGrid make_picard_grid(GridPtr grid, double T, std::span<const double> hit,
                            const HeatStepperConfig& stepper) {
  if (!grid) throw ConfigError("make_picard_grid: null grid");
  PicardGrid pg;
  pg.grid = std::move(grid);
  pg.stepper = stepper;
  pg.mesh = build_time_mesh(T, hit, stepper);
  return pg;
}

PicardGrid default_picard_grid(const ProblemSpec& spec, double T, std::size_t nodes,
                               std::span<const double> hit) {
  HeatStepperConfig st;
  st.dt_initial = 1e-3 * spec.epsilon;
  return make_picard_grid(default_grid(spec.dim, nodes, T, spec.epsilon), T, hit, st);
}

std::vector<double> VWPair::u_at(std::size_t n) const {
  std::vector<double> u = v.values.at(n);
  const auto& wn = w.values.at(n);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] += wn[i];
  return u;
}

FluxSeries FluxSeries::from_values(int dim, std::vector<double> times, std::vector<double> g,
                                   bool singular_start) {
  if (times.size() != g.size() || times.empty()) {
    throw ConfigError("FluxSeries: times and values must have equal nonzero length");
  }
  FluxSeries f;
  f.dim = dim;
  f.times = std::move(times);
  f.g = std::move(g);
  f.singular_start = singular_start;
  const double p = dim - 2.0;
  f.conv.assign(f.times.size(), 0.0);
  for (std::size_t n = 0; n + 1 < f.times.size(); ++n) {
    const double dt = f.times[n + 1] - f.times[n];
    const double e = std::exp(-p * dt);
    if (n == 0 && singular_start) {
      f.conv[1] = 2.0 * dt * f.g[1];
    } else {
      f.conv[n + 1] = e * f.conv[n] + 0.5 * dt * (e * f.g[n] + f.g[n + 1]);
    }
  }
  return f;
}

FluxSeries FluxSeries::from_field(const FieldSeries& v, bool singular_start) {
  const auto s = v.grid->boundary_derivative_stencil();
  std::vector<double> g(v.steps());
  for (std::size_t n = 0; n < v.steps(); ++n) {
    const auto& x = v.values[n];
    g[n] = -(s[0] * x[0] + s[1] * x[1] + s[2] * x[2]);
  }
  return from_values(v.grid->dim(), v.times, std::move(g), singular_start);
}

namespace {

std::size_t locate(const std::vector<double>& times, double t) {
  const double tk = times.back();
  if (!(t >= 0.0 && t <= tk * (1.0 + 1e-12))) {
    throw ConfigError("flux series: time " + std::to_string(t) + " outside the stored range");
  }
  auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.end()) return times.size() - 2;
  return static_cast<std::size_t>(it - times.begin()) - 1;
}

}  // namespace

double FluxSeries::g_at(double t) const {
  if (times.size() == 1) return g[0];
  const std::size_t n = locate(times, t);
  if (n == 0 && singular_start) return t > 0.0 ? g[1] * std::sqrt(times[1] / t) : g[1];
  const double s = (t - times[n]) / (times[n + 1] - times[n]);
  return (1.0 - s) * g[n] + s * g[n + 1];
}

double FluxSeries::conv_at(double t) const {
  if (times.size() == 1) return 0.0;
  const std::size_t n = locate(times, t);
  if (n == 0 && singular_start) return 2.0 * g[1] * std::sqrt(t * times[1]);
  const double p = dim - 2.0;
  const double dt = t - times[n];
  const double e = std::exp(-p * dt);
  return e * conv[n] + 0.5 * dt * (e * g[n] + g_at(t));
}

RadialField phi_effective(const ProblemSpec& spec, GridPtr grid) {
  RadialField f = sample_profile(grid, spec.phi, spec.phi_breakpoints);
  const double p = spec.dim - 2.0;
  const auto r = grid->r();
  for (std::size_t i = 0; i < r.size(); ++i) f.values[i] -= spec.phi_b * std::pow(r[i], -p);
  // The boundary value of phi is its trace, not the sampled limit.
  f.values[0] = spec.phi(1.0) - spec.phi_b;
  return f;
}

namespace {

bool phi_is_singular(const RadialField& phi) {
  const double scale = std::max(1.0, phi.sup_norm());
  return std::abs(phi.values[0]) > 1e-12 * scale;
}

FieldSeries march(const ProblemSpec& spec, const PicardGrid& pg, const RadialField& init,
                  const std::function<void(std::size_t, std::span<double>)>& source,
                  const std::function<double(std::size_t)>& far = {}) {
  FieldSeries out;
  out.grid = pg.grid;
  out.times = pg.mesh;
  out.values = duhamel_march(init, 1.0 / spec.epsilon, pg.mesh, source, pg.stepper, far);
  return out;
}

std::vector<double> inverse_powers(const RadialGrid& grid) {
  const double p = grid.dim() - 2.0;
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = std::pow(grid[i], -p);
  return out;
}

// F2 profile coefficient g_n - (N-2) C_n, with the singular first node
// replaced by its neighbour.
double f2_coefficient(const FluxSeries& f, std::size_t n) {
  const double p = f.dim - 2.0;
  if (n == 0 && f.singular_start) return f.times.size() > 1 ? f.g[1] - p * f.conv[1] : 0.0;
  return f.g[n] - p * f.conv[n];
}

}  // namespace

FieldSeries d_eps_series(const ProblemSpec& spec, double psi, const PicardGrid& pg) {
  const auto rp = inverse_powers(*pg.grid);
  const double p = spec.dim - 2.0;
  return march(spec, pg, RadialField::zeros(pg.grid), [&](std::size_t n, std::span<double> out) {
    const double a = -p * psi * std::exp(-p * pg.mesh[n]);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * rp[i];
  });
}

RadialField d_eps(const ProblemSpec& spec, double psi, const PicardGrid& pg) {
  auto s = d_eps_series(spec, psi, pg);
  return RadialField(pg.grid, std::move(s.values.back()));
}

double f2_radial(const FluxSeries& g, double r, double t) {
  if (!(r >= 1.0)) throw ConfigError("f2_radial: radius must be >= 1");
  const double p = g.dim - 2.0;
  return std::pow(r, -p) * (g.g_at(t) - p * g.conv_at(t));
}

FieldSeries d_tilde(const ProblemSpec& spec, const PicardGrid& pg, const FieldSeries& v,
                    bool singular_start) {
  const auto flux = FluxSeries::from_field(v, singular_start);
  const auto rp = inverse_powers(*pg.grid);
  return march(spec, pg, RadialField::zeros(pg.grid), [&](std::size_t n, std::span<double> out) {
    const double a = f2_coefficient(flux, n);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * rp[i];
  });
}

FieldSeries q_eps_step(const ProblemSpec& spec, const PicardGrid& pg, const FieldSeries& v) {
  const RadialField phi = phi_effective(spec, pg.grid);
  const auto flux = FluxSeries::from_field(v, phi_is_singular(phi));
  const auto rp = inverse_powers(*pg.grid);
  const double p = spec.dim - 2.0;
  // Far value of v chosen so that v + w keeps u(R) at the value used by the
  // direct solver.
  const double R = pg.grid->outer_radius();
  const double u_far =
      pg.stepper.far_bc == FarBoundary::dirichlet_frozen ? spec.phi(R) : 0.0;
  return march(
      spec, pg, phi,
      [&](std::size_t n, std::span<double> out) {
        const double a = p * spec.phi_b * std::exp(-p * pg.mesh[n]) + f2_coefficient(flux, n);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * rp[i];
      },
      [&](std::size_t n) {
        return u_far - rp.back() * (spec.phi_b * std::exp(-p * pg.mesh[n]) - flux.conv[n]);
      });
}

double x_norm(const FieldSeries& v, double L, double alpha, double epsilon) {
  double best = 0.0;
  for (std::size_t n = 0; n < v.steps(); ++n) {
    const double s = v.times[n] / epsilon;
    const auto& x = v.values[n];
    double sup = 0.0;
    for (double y : x) sup = std::max(sup, std::abs(y));
    double e = (1.0 + std::pow(s, 0.5 * alpha)) * sup;
    if (s > 0.0) {
      e += std::sqrt(s) * (1.0 + std::pow(s, 0.5 * (alpha - 1.0))) *
           gradient_sup_norm(*v.grid, x);
    }
    best = std::max(best, std::exp(-L * v.times[n]) * e);
  }
  return best;
}

double reconstruct_w(const ProblemSpec& spec, const FluxSeries& g, double t, double r) {
  if (!(r >= 1.0)) throw ConfigError("reconstruct_w: radius must be >= 1");
  const double p = spec.dim - 2.0;
  return std::pow(r, -p) * (spec.phi_b * std::exp(-p * t) - g.conv_at(t));
}

FieldSeries zero_series(const PicardGrid& pg) {
  FieldSeries z;
  z.grid = pg.grid;
  z.times = pg.mesh;
  z.values.assign(pg.mesh.size(), std::vector<double>(pg.grid->size(), 0.0));
  return z;
}

FieldSeries difference(const FieldSeries& a, const FieldSeries& b) {
  if (a.steps() != b.steps()) throw ConfigError("difference: series lengths differ");
  FieldSeries d = a;
  for (std::size_t n = 0; n < d.steps(); ++n) {
    for (std::size_t i = 0; i < d.values[n].size(); ++i) d.values[n][i] -= b.values[n][i];
  }
  return d;
}

namespace {

FieldSeries probe(const PicardGrid& pg, double scale, double growth) {
  FieldSeries p = zero_series(pg);
  const auto r = pg.grid->r();
  for (std::size_t n = 0; n < p.steps(); ++n) {
    const double a = std::exp(growth * pg.mesh[n]);
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double d = r[i] - 1.0;
      p.values[n][i] = a * d * std::exp(-d / scale);
    }
  }
  return p;
}

struct Fixed {
  FieldSeries v;
  std::vector<double> increments;
};

Fixed iterate(const ProblemSpec& spec, const PicardConfig& cfg, const PicardGrid& pg,
              FieldSeries v, double L, double alpha) {
  Fixed out;
  for (int k = 0; k < cfg.max_iter; ++k) {
    FieldSeries next = q_eps_step(spec, pg, v);
    const double inc = x_norm(difference(next, v), L, alpha, spec.epsilon);
    out.increments.push_back(inc);
    v = std::move(next);
    if (!std::isfinite(inc)) break;
    if (inc < cfg.tol) {
      out.v = std::move(v);
      return out;
    }
  }
  std::ostringstream msg;
  msg << "picard_solve: increment " << out.increments.back() << " after "
      << out.increments.size() << " iterations exceeds tol " << cfg.tol;
  throw PicardNonConvergence(msg.str(), out.increments);
}

}  // namespace

VWPair picard_solve(const ProblemSpec& spec, const PicardConfig& cfg, const PicardGrid& pg) {
  cfg.validate(spec.dim);
  if (!pg.grid || pg.grid->dim() != spec.dim) throw ConfigError("picard_solve: grid mismatch");
  if (std::abs(pg.mesh.back() - cfg.T) > 1e-12 * cfg.T) {
    throw ConfigError("picard_solve: mesh horizon differs from T");
  }
  const double alpha = cfg.resolved_alpha(spec.dim);
  const double eps = spec.epsilon;

  VWPair out;
  out.alpha = alpha;
  const FieldSeries v0 = q_eps_step(spec, pg, zero_series(pg));

  // Contraction probes: two fixed shapes and the first iterate.
  std::vector<FieldSeries> probes{probe(pg, 1.0, 0.0), probe(pg, 0.25, 1.0)};
  if (x_norm(v0, 0.0, alpha, eps) > 0.0) probes.push_back(v0);
  std::vector<FieldSeries> images;
  for (const auto& p : probes) images.push_back(d_tilde(spec, pg, p));
  auto ratio = [&](double L) {
    double m = 0.0;
    for (std::size_t k = 0; k < probes.size(); ++k) {
      m = std::max(m, x_norm(images[k], L, alpha, eps) / x_norm(probes[k], L, alpha, eps));
    }
    return m;
  };

  double L = cfg.L;
  if (L > 0.0) {
    out.l_trace.emplace_back(L, ratio(L));
  } else {
    for (L = 1.0;; L *= 2.0) {
      if (L > 1024.0) {
        std::ostringstream msg;
        msg << "picard_solve: no contraction up to L = 1024;";
        for (const auto& [l, q] : out.l_trace) msg << " L=" << l << ":" << q;
        throw SolverError(msg.str());
      }
      const double q = ratio(L);
      out.l_trace.emplace_back(L, q);
      if (q <= 0.5) break;
    }
  }
  out.L = L;
  out.contraction_ratio = out.l_trace.back().second;

  Fixed a = iterate(spec, cfg, pg, v0, L, alpha);
  // Second start away from the affine orbit of v0, so the gap is a real test.
  Fixed b = iterate(spec, cfg, pg, probes.front(), L, alpha);
  out.iterations = static_cast<int>(a.increments.size());
  out.increments = a.increments;
  out.uniqueness_gap = x_norm(difference(a.v, b.v), L, alpha, eps);
  out.v = std::move(a.v);

  const RadialField phi = phi_effective(spec, pg.grid);
  out.g = FluxSeries::from_field(out.v, phi_is_singular(phi));
  out.w = zero_series(pg);
  const auto rp = inverse_powers(*pg.grid);
  const double p = spec.dim - 2.0;
  for (std::size_t n = 0; n < out.w.steps(); ++n) {
    const double c = spec.phi_b * std::exp(-p * pg.mesh[n]) - out.g.conv[n];
    for (std::size_t i = 0; i < rp.size(); ++i) out.w.values[n][i] = c * rp[i];
  }
  return out;
}

}  // namespace dynbc
