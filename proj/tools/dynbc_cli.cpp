// Command-line front end. Exit codes: 0 ok, 1 check failed, 2 bad
// configuration, 3 solver failure.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "dynbc/analysis_checks.hpp"
#include "dynbc/errors.hpp"
#include "dynbc/kernels.hpp"
#include "dynbc/limit_semigroup.hpp"
#include "dynbc/lower_bound.hpp"
#include "dynbc/picard.hpp"
#include "dynbc/sphere_quadrature.hpp"
#include "dynbc/sweep.hpp"

using namespace dynbc;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0, kCheckFailed = 1, kConfig = 2, kSolver = 3;

std::vector<double> linspace(double a, double b, int n) {
  if (n < 1) throw ConfigError("need at least one sample");
  std::vector<double> v;
  for (int k = 0; k < n; ++k) v.push_back(n == 1 ? b : a + (b - a) * k / (n - 1.0));
  v.back() = b;
  return v;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path);
  f.precision(17);
  return f;
}

void write_json(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    open_out(path) << j.dump(2) << "\n";
  }
}

ProblemSpec make_problem(const std::string& profile, int dim, double eps, double phi_b, double b) {
  if (profile == "harmonic") return harmonic_profile_spec(dim, eps, phi_b);
  if (profile == "cutoff") return cutoff_profile_spec(dim, eps, b);
  throw ConfigError("unknown profile '" + profile + "' (harmonic, cutoff)");
}

void print_report(const RateReport& rep) {
  std::printf("scenario %s, N=%d\n", rep.scenario.c_str(), rep.dim);
  for (const auto& p : rep.points) std::printf("  eps=%-10.6g value=%.6e\n", p.epsilon, p.error);
  if (rep.fitted) {
    std::printf("slope %.4f, leave-one-out %.4f, residual %.2e\n", rep.slope, rep.loo_shift,
                rep.residual);
  } else {
    std::printf("no fit (fewer than 4 positive values)\n");
  }
  if (!rep.validation.empty()) {
    std::printf("Richardson %s\n", rep.validation_clear ? "clear" : "FLAGGED");
  }
  for (const auto& f : rep.failures) std::printf("failed: %s\n", f.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exterior-domain heat flow with dynamic boundary condition"};
  app.require_subcommand(1);

  // kernels-check
  auto* kc = app.add_subcommand("kernels-check", "boundary mass of the evolving kernel");
  std::vector<int> kc_dims{3, 4, 5};
  std::vector<double> kc_times{0.0, 0.5, 1.0}, kc_radii{1.5, 2.0, 4.0};
  double kc_tol = 1e-6;
  kc->add_option("--dims", kc_dims);
  kc->add_option("--times", kc_times);
  kc->add_option("--radii", kc_radii);
  kc->add_option("--tol", kc_tol, "relative tolerance")->capture_default_str();

  // limit-eval
  auto* le = app.add_subcommand("limit-eval", "S2(t) of a constant boundary datum on a lattice");
  int le_dim = 3, le_nr = 41, le_nt = 11;
  double le_phi_b = 1.0, le_rmin = 1.0, le_rmax = 4.0, le_tmax = 1.0;
  std::string le_out;
  le->add_option("--dim", le_dim)->capture_default_str();
  le->add_option("--phi-b", le_phi_b)->capture_default_str();
  le->add_option("--r-min", le_rmin)->capture_default_str();
  le->add_option("--r-max", le_rmax)->capture_default_str();
  le->add_option("--nr", le_nr)->capture_default_str();
  le->add_option("--t-max", le_tmax)->capture_default_str();
  le->add_option("--nt", le_nt)->capture_default_str();
  le->add_option("--out", le_out, "CSV path (stdout if omitted)");

  // solve
  auto* so = app.add_subcommand("solve", "direct solve; trajectory as CSV t,r,u");
  int so_dim = 3, so_samples = 11;
  std::size_t so_nodes = 2000;
  double so_eps = 0.1, so_phi_b = 1.0, so_b = 2.0, so_T = 1.0;
  std::string so_profile = "harmonic", so_out;
  so->add_option("--dim", so_dim)->capture_default_str();
  so->add_option("--eps", so_eps)->capture_default_str();
  so->add_option("--profile", so_profile, "harmonic or cutoff")->capture_default_str();
  so->add_option("--phi-b", so_phi_b)->capture_default_str();
  so->add_option("--b", so_b, "cutoff radius")->capture_default_str();
  so->add_option("--T", so_T)->capture_default_str();
  so->add_option("--samples", so_samples, "equispaced output times in (0, T]")
      ->capture_default_str();
  so->add_option("--nodes", so_nodes)->capture_default_str();
  so->add_option("--out", so_out, "CSV path")->required();

  // sweep
  auto* sw = app.add_subcommand("sweep", "epsilon sweep; writes <stem>.csv and <stem>.json");
  std::string sw_config, sw_out, sw_scenario, sw_tier;
  int sw_dim = 0;
  sw->add_option("--config", sw_config, "key=value file");
  sw->add_option("--scenario", sw_scenario, "overrides the config");
  sw->add_option("--dim", sw_dim, "overrides the config");
  sw->add_option("--tier", sw_tier, "smoke, standard or thorough (without --config)");
  sw->add_option("--out", sw_out, "output stem")->required();

  // picard
  auto* pi = app.add_subcommand("picard", "fixed-point solve cross-checked against the direct solver");
  int pi_dim = 3;
  std::size_t pi_nodes = 2000;
  double pi_eps = 0.1, pi_phi_b = 1.0, pi_T = 1.0, pi_L = 0.0, pi_tol = 1e-9;
  std::string pi_out;
  pi->add_option("--dim", pi_dim)->capture_default_str();
  pi->add_option("--eps", pi_eps)->capture_default_str();
  pi->add_option("--phi-b", pi_phi_b)->capture_default_str();
  pi->add_option("--T", pi_T)->capture_default_str();
  pi->add_option("--L", pi_L, "0 selects L automatically")->capture_default_str();
  pi->add_option("--tol", pi_tol)->capture_default_str();
  pi->add_option("--nodes", pi_nodes)->capture_default_str();
  pi->add_option("--out", pi_out, "JSON path (stdout if omitted)");

  // lower-bound
  auto* lb = app.add_subcommand("lower-bound", "lower-rate sweep and heat certificate");
  int lb_dim = 3;
  std::string lb_tier = "standard", lb_out;
  double lb_tau2 = 1e3;
  lb->add_option("--dim", lb_dim)->capture_default_str();
  lb->add_option("--tier", lb_tier)->capture_default_str();
  lb->add_option("--tau-max", lb_tau2, "end of the certificate window")->capture_default_str();
  lb->add_option("--out", lb_out, "output stem")->required();

  // analysis
  auto* an = app.add_subcommand("analysis", "convolution weight search and decay fits");
  ConvolutionParams an_p;
  std::string an_out;
  an->add_option("--a", an_p.a)->capture_default_str();
  an->add_option("--b", an_p.b)->capture_default_str();
  an->add_option("--gamma", an_p.gamma)->capture_default_str();
  an->add_option("--T", an_p.T)->capture_default_str();
  an->add_option("--delta", an_p.delta)->capture_default_str();
  an->add_option("--out", an_out, "JSON path (stdout if omitted)");

  // report
  auto* rp = app.add_subcommand("report", "summarize a JSON report and check its slope");
  std::string rp_in, rp_csv;
  double rp_min = -INFINITY, rp_max = INFINITY;
  rp->add_option("json", rp_in)->required();
  rp->add_option("--min-slope", rp_min);
  rp->add_option("--max-slope", rp_max);
  rp->add_option("--csv", rp_csv, "rewrite the CSV view");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*kc) {
      double worst = 0.0;
      for (int dim : kc_dims) {
        const KernelContext ctx(dim);
        for (double t : kc_times) {
          for (double rad : kc_radii) {
            const auto x = ExteriorPoint::on_axis(dim, rad);
            const double exact = kernel_mass(ctx, rad, t);
            const auto r = integrate_kernel_adaptive(
                dim, std::exp(t) * rad,
                [&](const SpherePoint& y) { return evolving_kernel(ctx, x, y, t); }, exact);
            const double rel = std::abs(r.value - exact) / exact;
            worst = std::max(worst, rel);
            std::printf("N=%d t=%-4g |x|=%-4g quad=%.15f exact=%.15f rel=%.2e level=%d\n", dim,
                        t, rad, r.value, exact, rel, r.level);
          }
        }
      }
      std::printf("max relative error %.2e (tol %.1e)\n", worst, kc_tol);
      return worst < kc_tol ? kOk : kCheckFailed;
    }

    if (*le) {
      const KernelContext ctx(le_dim);
      const auto psi = BoundaryDatum::constant(le_phi_b);
      std::ofstream file;
      if (!le_out.empty()) file = open_out(le_out);
      std::ostream& os = le_out.empty() ? std::cout : file;
      os.precision(17);
      os << "t,r,value\n";
      for (double t : linspace(0.0, le_tmax, le_nt)) {
        for (double r : linspace(le_rmin, le_rmax, le_nr)) {
          os << t << ',' << r << ',' << s2_apply(ctx, psi, ExteriorPoint::on_axis(le_dim, r), t)
             << '\n';
        }
      }
      return kOk;
    }

    if (*so) {
      const ProblemSpec spec = make_problem(so_profile, so_dim, so_eps, so_phi_b, so_b);
      const auto times = linspace(so_T / so_samples, so_T, so_samples);
      const Trajectory traj = solve_dynbc(spec, so_T, times, default_grid(so_dim, so_nodes, so_T, so_eps),
                                          default_dynbc_config(so_eps));
      auto f = open_out(so_out);
      write_trajectory_csv(traj, f);
      std::printf("%zu steps, boundary residual %.2e, u_b(T) = %.10f\n", traj.steps,
                  traj.boundary_residual, traj.states.back().boundary_value);
      return kOk;
    }

    if (*sw) {
      SweepConfig cfg;
      if (!sw_config.empty()) {
        cfg = load_sweep_config(sw_config);
      } else if (!sw_tier.empty()) {
        cfg.tier = parse_tier(sw_tier);
        cfg.resolution = tier_resolution(cfg.tier);
        cfg.ladder = tier_ladder(cfg.tier);
      }
      if (!sw_scenario.empty()) cfg.scenario = parse_scenario(sw_scenario);
      if (sw_dim != 0) cfg.dim = sw_dim;
      const RateReport rep = run_sweep(cfg);
      emit_report(rep, sw_out);
      print_report(rep);
      return kOk;
    }

    if (*pi) {
      const ProblemSpec spec = harmonic_profile_spec(pi_dim, pi_eps, pi_phi_b);
      const auto hit = linspace(0.5 * pi_T, pi_T, 11);
      const PicardGrid pg = default_picard_grid(spec, pi_T, pi_nodes, hit);
      PicardConfig pc;
      pc.T = pi_T;
      pc.L = pi_L;
      pc.tol = pi_tol;
      json j;
      VWPair vw;
      try {
        vw = picard_solve(spec, pc, pg);
      } catch (const PicardNonConvergence& e) {
        j["error"] = e.what();
        j["increments"] = e.history();
        write_json(j, pi_out);
        return kSolver;
      }
      DynBCConfig dc;
      dc.stepper = pg.stepper;
      const Trajectory direct = solve_dynbc(spec, pi_T, hit, pg.grid, dc);
      double diff = 0.0, umax = 0.0;
      std::size_t k = 0;
      for (std::size_t n = 0; n < pg.mesh.size() && k < hit.size(); ++n) {
        if (pg.mesh[n] != hit[k]) continue;
        const auto u = vw.u_at(n);
        const auto& ud = direct.states[k++].interior.values;
        for (std::size_t i = 0; i < u.size(); ++i) {
          diff = std::max(diff, std::abs(u[i] - ud[i]));
          umax = std::max(umax, std::abs(ud[i]));
        }
      }
      j["dim"] = pi_dim;
      j["epsilon"] = pi_eps;
      j["phi_b"] = pi_phi_b;
      j["T"] = pi_T;
      j["L"] = vw.L;
      j["alpha"] = vw.alpha;
      j["iterations"] = vw.iterations;
      j["increments"] = vw.increments;
      j["contraction_ratio"] = vw.contraction_ratio;
      j["l_trace"] = vw.l_trace;
      j["uniqueness_gap"] = vw.uniqueness_gap;
      j["direct_sup_discrepancy"] = diff;
      j["direct_relative_discrepancy"] = umax > 0.0 ? diff / umax : 0.0;
      j["comparison_window"] = {hit.front(), hit.back()};
      write_json(j, pi_out);
      return kOk;
    }

    if (*lb) {
      SweepConfig cfg;
      cfg.scenario = Scenario::lower_rate;
      cfg.dim = lb_dim;
      cfg.tier = parse_tier(lb_tier);
      cfg.resolution = tier_resolution(cfg.tier);
      cfg.ladder = tier_ladder(cfg.tier);
      RateReport rep = run_sweep(cfg);
      LowerBoundSpec spec;
      spec.dim = lb_dim;
      const PlateauCertificate cert = plateau_certificate(spec, 1.0, lb_tau2);
      rep.metrics["certificate"] = cert.certificate;
      rep.metrics["certificate_last_decade_variation"] = cert.last_decade_variation;
      emit_report(rep, lb_out);
      print_report(rep);
      std::printf("certificate %.4e on [1, %g], last-decade variation %.3f\n", cert.certificate,
                  lb_tau2, cert.last_decade_variation);
      return kOk;
    }

    if (*an) {
      an_p.validate();
      json j;
      j["params"] = {{"a", an_p.a}, {"b", an_p.b}, {"gamma", an_p.gamma}, {"T", an_p.T},
                     {"delta", an_p.delta}};
      const LStarResult ls = find_L_star(an_p);
      j["L_star"] = ls.L_star;
      j["sup_at_L_star"] = ls.sup_at_L_star;
      j["sup_at_2L_star"] = ls.sup_at_2L_star;
      j["trace"] = ls.trace;
      j["beta_range"] = {{"3", beta_range(3, 1.0)}, {"4", beta_range(4, 1.5)},
                         {"5", beta_range(5, 1.5)}};
      json decay = json::array();
      for (double gamma : {1.0, 2.0}) {
        const DecayFit f = s1_decay_fit(3, gamma, {1.0, 4.0, 16.0, 64.0});
        decay.push_back({{"gamma", gamma}, {"exponent", f.exponent}, {"times", f.times},
                         {"sup_norms", f.sup_norms}});
      }
      j["s1_decay"] = decay;
      write_json(j, an_out);
      return kOk;
    }

    if (*rp) {
      const RateReport rep = read_report(rp_in);
      print_report(rep);
      if (!rp_csv.empty()) {
        auto f = open_out(rp_csv);
        write_csv(rep, f);
      }
      const bool ok = rep.fitted && rep.slope >= rp_min && rep.slope <= rp_max;
      return ok ? kOk : kCheckFailed;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kConfig;
  } catch (const CertificateFailure& e) {
    std::fprintf(stderr, "certificate failed: %s\n", e.what());
    return kCheckFailed;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return kSolver;
  }
  return kOk;
}
