#include "dynbc/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "dynbc/errors.hpp"
#include "dynbc/lower_bound.hpp"
#include "dynbc/picard.hpp"
#include "dynbc/rate_fit.hpp"

namespace dynbc {

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::upper_rate: return "upper_rate";
    case Scenario::lower_rate: return "lower_rate";
    case Scenario::d_eps_scaling: return "d_eps_scaling";
    case Scenario::picard_xval: return "picard_xval";
  }
  return "?";
}

std::string to_string(Tier t) {
  switch (t) {
    case Tier::smoke: return "smoke";
    case Tier::standard: return "standard";
    case Tier::thorough: return "thorough";
  }
  return "?";
}

Scenario parse_scenario(const std::string& name) {
  for (Scenario s : {Scenario::upper_rate, Scenario::lower_rate, Scenario::d_eps_scaling,
                     Scenario::picard_xval}) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown scenario '" + name + "'");
}

Tier parse_tier(const std::string& name) {
  for (Tier t : {Tier::smoke, Tier::standard, Tier::thorough}) {
    if (to_string(t) == name) return t;
  }
  throw ConfigError("unknown tier '" + name + "'");
}

Resolution tier_resolution(Tier t) {
  Resolution r;
  switch (t) {
    case Tier::smoke:
      r.nodes = 400;
      r.dt_growth = 1.1;
      break;
    case Tier::standard:
      r.nodes = 2000;
      r.dt_growth = 1.05;
      break;
    case Tier::thorough:
      r.nodes = 4000;
      r.dt_growth = 1.03;
      break;
  }
  return r;
}

std::vector<double> tier_ladder(Tier t) {
  const int depth = t == Tier::smoke ? 4 : t == Tier::standard ? 5 : 6;
  std::vector<double> out;
  for (int k = 0; k < depth; ++k) out.push_back(0.1 * std::pow(2.0, -k));
  return out;
}

void SweepConfig::validate() const {
  if (dim < 3) throw ConfigError("sweep: dim must be >= 3");
  if (ladder.size() < 4) throw ConfigError("sweep: the epsilon ladder needs at least 4 values");
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    if (!(ladder[k] > 0.0 && ladder[k] < 1.0)) throw ConfigError("sweep: epsilon must lie in (0, 1)");
    if (k > 0 && !(ladder[k] < ladder[k - 1])) {
      throw ConfigError("sweep: the epsilon ladder must be strictly decreasing");
    }
  }
  // Four halvings' worth of range: the shortest admissible power-of-2 ladder.
  if (ladder.front() / ladder.back() < 8.0 * (1.0 - 1e-12)) {
    throw ConfigError("sweep: the epsilon ladder must span a factor of at least 8");
  }
  if (!(r_min > 1.0 && r_max >= r_min)) throw ConfigError("sweep: need 1 < K_r_min <= K_r_max");
  if (!(t1 > 0.0 && t2 >= t1)) throw ConfigError("sweep: need 0 < t1 <= t2");
  if (!(t_eval > 0.0)) throw ConfigError("sweep: t_eval must be positive");
  if (!(b > 1.0)) throw ConfigError("sweep: b must exceed 1");
  if (time_samples < 1) throw ConfigError("sweep: time_samples must be >= 1");
  if (workers < 1) throw ConfigError("sweep: workers must be >= 1");
  if (resolution.nodes < 3) throw ConfigError("sweep: grid_nodes must be >= 3");
  if (!(resolution.sigma >= 0.0)) throw ConfigError("sweep: grading_sigma must be >= 0");
  if (!(resolution.R >= 0.0)) throw ConfigError("sweep: R must be positive or default");
  if (!(resolution.dt0_factor > 0.0)) throw ConfigError("sweep: dt0_factor must be positive");
  HeatStepperConfig h;
  h.theta = resolution.theta;
  h.dt_growth = resolution.dt_growth;
  h.dt_max = resolution.dt_max;
  h.validate();
}

std::map<std::string, std::string> config_echo(const SweepConfig& cfg) {
  auto num = [](double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
  };
  std::string ladder;
  for (std::size_t k = 0; k < cfg.ladder.size(); ++k) {
    if (k) ladder += ',';
    ladder += num(cfg.ladder[k]);
  }
  return {{"scenario", to_string(cfg.scenario)},
          {"dim", std::to_string(cfg.dim)},
          {"epsilon_ladder", ladder},
          {"K_r_min", num(cfg.r_min)},
          {"K_r_max", num(cfg.r_max)},
          {"t1", num(cfg.t1)},
          {"t2", num(cfg.t2)},
          {"t_eval", num(cfg.t_eval)},
          {"b", num(cfg.b)},
          {"time_samples", std::to_string(cfg.time_samples)},
          {"tier", to_string(cfg.tier)},
          {"grid_nodes", std::to_string(cfg.resolution.nodes)},
          {"grading_sigma", num(cfg.resolution.sigma)},
          {"R_policy", cfg.resolution.R > 0.0 ? num(cfg.resolution.R) : "default"},
          {"theta", num(cfg.resolution.theta)},
          {"dt0_factor", num(cfg.resolution.dt0_factor)},
          {"dt_growth", num(cfg.resolution.dt_growth)},
          {"workers", std::to_string(cfg.workers)},
          {"richardson", cfg.richardson ? "true" : "false"}};
}

namespace {

std::vector<double> window_times(const SweepConfig& cfg) {
  if (cfg.time_samples == 1 || cfg.t1 == cfg.t2) return {cfg.t1};
  std::vector<double> out;
  for (int k = 0; k < cfg.time_samples; ++k) {
    out.push_back(cfg.t1 + (cfg.t2 - cfg.t1) * k / (cfg.time_samples - 1.0));
  }
  out.back() = cfg.t2;
  return out;
}

double horizon(const SweepConfig& cfg) {
  return cfg.scenario == Scenario::d_eps_scaling ? cfg.t_eval : cfg.t2;
}

struct Entry {
  double value = 0.0;
  double refined = std::numeric_limits<double>::quiet_NaN();
  double wide = std::numeric_limits<double>::quiet_NaN();
  std::size_t nodes = 0;
  double R = 0.0;
  double dt0 = 0.0;
  std::map<std::string, double> metrics;
  std::string failure;
};

// Scenario functional at one resolution; extra diagnostics go to `metrics`.
double functional(const SweepConfig& cfg, double eps, const Resolution& res,
                  std::map<std::string, double>* metrics) {
  const double T = horizon(cfg);
  switch (cfg.scenario) {
    case Scenario::upper_rate: {
      const ProblemSpec spec = harmonic_profile_spec(cfg.dim, eps, 1.0);
      const auto times = window_times(cfg);
      const Trajectory traj =
          solve_dynbc(spec, T, times, res.grid(cfg.dim, T, eps), res.dynbc(eps));
      if (metrics) (*metrics)["boundary_residual"] = traj.boundary_residual;
      return error_vs_limit(traj, spec, cfg.r_min, cfg.r_max, cfg.t1, cfg.t2);
    }
    case Scenario::d_eps_scaling: {
      const ProblemSpec spec = harmonic_profile_spec(cfg.dim, eps, 1.0);
      const PicardGrid pg =
          make_picard_grid(res.grid(cfg.dim, T, eps), T, {}, res.dynbc(eps).stepper);
      return d_eps(spec, 1.0, pg).sup_norm();
    }
    case Scenario::picard_xval: {
      const ProblemSpec spec = harmonic_profile_spec(cfg.dim, eps, 1.0);
      const auto times = window_times(cfg);
      const DynBCConfig dc = res.dynbc(eps);
      const PicardGrid pg = make_picard_grid(res.grid(cfg.dim, T, eps), T, times, dc.stepper);
      PicardConfig pc;
      pc.T = T;
      const VWPair vw = picard_solve(spec, pc, pg);
      const Trajectory direct = solve_dynbc(spec, T, times, pg.grid, dc);
      double vmax = 0.0, diff = 0.0, umax = 0.0;
      std::size_t k = 0;
      for (std::size_t n = 0; n < pg.mesh.size() && k < times.size(); ++n) {
        if (pg.mesh[n] != times[k]) continue;
        const auto u = vw.u_at(n);
        const auto& ud = direct.states[k].interior.values;
        for (std::size_t i = 0; i < u.size(); ++i) {
          diff = std::max(diff, std::abs(u[i] - ud[i]));
          umax = std::max(umax, std::abs(ud[i]));
          vmax = std::max(vmax, std::abs(vw.v.values[n][i]));
        }
        ++k;
      }
      if (metrics) {
        (*metrics)["xval_relative"] = umax > 0.0 ? diff / umax : diff;
        (*metrics)["L"] = vw.L;
        (*metrics)["contraction_ratio"] = vw.contraction_ratio;
        (*metrics)["iterations"] = vw.iterations;
      }
      return vmax;
    }
    case Scenario::lower_rate:
      break;
  }
  throw ConfigError("functional: scenario handled elsewhere");
}

Entry run_entry(const SweepConfig& cfg, double eps) {
  Entry e;
  const double T = horizon(cfg);
  const Resolution& res = cfg.resolution;
  e.nodes = res.nodes;
  e.R = res.outer_radius(T, eps);
  e.dt0 = res.dt0_factor * eps;
  try {
    if (cfg.scenario == Scenario::lower_rate) {
      LowerBoundSpec lb;
      lb.dim = cfg.dim;
      lb.b = cfg.b;
      lb.r_min = cfg.r_min;
      lb.r_max = cfg.r_max;
      lb.t1 = cfg.t1;
      lb.t2 = cfg.t2;
      const LowerRatePoint p = lower_rate_point(lb, eps, res, cfg.time_samples);
      e.value = p.inf_u;
      e.refined = p.inf_u_refined;
      e.wide = p.inf_u_wide;
      e.metrics["comparison_margin"] = p.comparison_margin;
      e.metrics["richardson_estimate"] = p.richardson_estimate;
    } else {
      e.value = functional(cfg, eps, res, &e.metrics);
      if (cfg.richardson) {
        e.refined = functional(cfg, eps, res.halved_step(), nullptr);
        e.wide = functional(cfg, eps, res.doubled_radius(T, eps), nullptr);
      }
    }
  } catch (const SolverError& ex) {
    e.failure = ex.what();
  }
  return e;
}

}  // namespace

RateReport run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.ladder.size();
  std::vector<Entry> entries(n);
  const std::size_t workers = static_cast<std::size_t>(cfg.workers);
  for (std::size_t start = 0; start < n; start += workers) {
    std::vector<std::future<Entry>> batch;
    for (std::size_t k = start; k < std::min(n, start + workers); ++k) {
      batch.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                 run_entry, std::cref(cfg), cfg.ladder[k]));
    }
    for (std::size_t k = 0; k < batch.size(); ++k) entries[start + k] = batch[k].get();
  }

  RateReport rep;
  rep.scenario = to_string(cfg.scenario);
  rep.dim = cfg.dim;
  rep.config = config_echo(cfg);
  std::vector<std::pair<double, double>> pts;
  for (std::size_t k = 0; k < n; ++k) {
    const Entry& e = entries[k];
    const double eps = cfg.ladder[k];
    if (!e.failure.empty()) {
      std::ostringstream s;
      s.precision(17);
      s << "eps=" << eps << ": " << e.failure;
      rep.failures.push_back(s.str());
      continue;
    }
    rep.points.push_back({eps, e.value, e.nodes, e.R, e.dt0});
    for (const auto& [key, v] : e.metrics) rep.metrics[key + "_k" + std::to_string(k)] = v;
    if (e.value > 0.0) pts.emplace_back(eps, e.value);
    if (!std::isnan(e.refined)) {
      ValidationEntry v;
      v.epsilon = eps;
      v.base = e.value;
      v.refined = e.refined;
      v.wide = e.wide;
      const double scale = std::abs(e.value) > 0.0 ? std::abs(e.value) : 1.0;
      v.refined_shift = std::abs(e.refined - e.value) / scale;
      v.wide_shift = std::abs(e.wide - e.value) / scale;
      v.ok = v.refined_shift <= cfg.richardson_tolerance && v.wide_shift <= cfg.richardson_tolerance;
      rep.validation_clear = rep.validation_clear && v.ok;
      rep.validation.push_back(v);
    }
  }
  if (rep.failures.size() * 2 > n) {
    std::string msg = "run_sweep: more than half of the ladder failed;";
    for (const auto& f : rep.failures) msg += " [" + f + "]";
    throw SolverError(msg);
  }
  if (pts.size() >= 4 && pts.size() == rep.points.size()) {
    const LogLogFit f = fit_loglog(pts);
    rep.fitted = true;
    rep.slope = f.slope;
    rep.intercept = f.intercept;
    rep.residual = f.residual;
    rep.loo_shift = leave_one_out_shift(pts);
  }
  return rep;
}

}  // namespace dynbc
