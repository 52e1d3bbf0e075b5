// Acceptance runner: one PASS/FAIL line per criterion. Exit status 0 only if
// every selected criterion passes.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dynbc/analysis_checks.hpp"
#include "dynbc/kernels.hpp"
#include "dynbc/lower_bound.hpp"
#include "dynbc/picard.hpp"
#include "dynbc/rate_fit.hpp"
#include "dynbc/sphere_quadrature.hpp"
#include "dynbc/sweep.hpp"

using namespace dynbc;

namespace {

// Pinned tolerances.
constexpr double kMassRelTol = 1e-6;
constexpr double kMassBudget = 10.0;
constexpr double kOracleRelTol = 5e-4;
constexpr double kOracleMinOrder = 1.8;
constexpr double kOracleBudget = 30.0;
constexpr double kUpperMinSlope = 0.45;
constexpr double kLooMax = 0.08;
constexpr double kUpperBudget = 600.0;
constexpr double kLower3Lo = 0.4, kLower3Hi = 0.6;
constexpr double kLower4Lo = 0.85, kLower4Hi = 1.15;
constexpr double kLowerBudget = 900.0;
constexpr double kComparisonFactor = 10.0;
constexpr double kPlateauMax = 0.2;
constexpr double kCertBudget = 120.0;
constexpr double kXvalRelTol = 0.02;
constexpr double kContractionMax = 0.55;
constexpr double kPicardBudget = 300.0;
constexpr double kDepsTarget = 0.5, kDepsHalfWidth = 0.1;
constexpr double kDepsBudget = 300.0;
constexpr double kConvMonotoneSlack = 1e-10;
constexpr double kConvClosedTol = 1e-8;
constexpr double kConvBudget = 30.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome timed(double budget, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o = body();
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.detail += "; runtime " + fmt("%.1f", s) + " s (budget " + fmt("%.0f", budget) + " s)";
  if (s > budget) o.pass = false;
  return o;
}

PointN generic_point(int dim, double radius) {
  const double dir[kMaxDim] = {1.0, 0.7, 0.4, 0.3, 0.2, 0.1, 0.05, 0.02};
  PointN p(std::span<const double>(dir, static_cast<std::size_t>(dim)));
  return p.scaled(radius / p.norm());
}

Outcome mass_law() {
  double worst = 0.0;
  for (int dim : {3, 4, 5}) {
    const KernelContext ctx(dim);
    for (double t : {0.0, 0.5, 1.0}) {
      for (double rad : {1.5, 2.0, 4.0}) {
        const ExteriorPoint x(generic_point(dim, rad));
        const double exact = kernel_mass(ctx, rad, t);
        const auto res = integrate_kernel_adaptive(
            dim, std::exp(t) * rad,
            [&](const SpherePoint& y) { return evolving_kernel(ctx, x, y, t); }, exact);
        worst = std::max(worst, std::abs(res.value - exact) / exact);
      }
    }
  }
  return {worst < kMassRelTol, "max relative error " + fmt("%.2e", worst)};
}

Outcome s1_oracle() {
  const double times[3] = {0.25, 1.0, 4.0};
  HeatStepperConfig cfg;
  cfg.dt_initial = 1e-5;
  cfg.dt_growth = 1.05;
  cfg.dt_max = 1e-3;
  auto rel_error = [&](std::size_t nodes) {
    auto g = RadialGrid::graded(3, nodes, 60.0, 3.0);
    const auto phi = RadialField::sample(g, [](double r) { return 1.0 / r; });
    const auto out = evolve_s1_samples(phi, times, cfg);
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
      double e = 0.0, m = 0.0;
      for (std::size_t i = 0; i < g->size(); ++i) {
        const double r = (*g)[i];
        const double ex = std::erf((r - 1.0) / (2.0 * std::sqrt(times[k]))) / r;
        e = std::max(e, std::abs(out[static_cast<std::size_t>(k)].values[i] - ex));
        m = std::max(m, std::abs(ex));
      }
      worst = std::max(worst, e / m);
    }
    return worst;
  };
  std::vector<std::pair<double, double>> pts;
  for (std::size_t n : {250, 500, 1000, 2000}) pts.emplace_back(1.0 / (n - 1.0), rel_error(n));
  const double standard = pts.back().second;
  const double order = fit_loglog(pts).slope;
  return {standard < kOracleRelTol && order >= kOracleMinOrder,
          "relative error " + fmt("%.2e", standard) + " at 2000 nodes, order " + fmt("%.3f", order)};
}

SweepConfig sweep(Scenario s, int dim) {
  SweepConfig cfg;
  cfg.scenario = s;
  cfg.dim = dim;
  return cfg;
}

std::string validation_text(const RateReport& rep) {
  double worst = 0.0;
  for (const auto& v : rep.validation) worst = std::max({worst, v.refined_shift, v.wide_shift});
  return std::string("Richardson ") + (rep.validation_clear ? "clear" : "FLAGGED") +
         " (max shift " + fmt("%.1e", worst) + ")";
}

Outcome upper_rate() {
  const RateReport rep = run_sweep(sweep(Scenario::upper_rate, 3));
  const bool ok = rep.fitted && rep.slope >= kUpperMinSlope && rep.loo_shift < kLooMax &&
                  rep.validation_clear;
  return {ok, "slope " + fmt("%.4f", rep.slope) + " (need >= 0.45), leave-one-out " +
                  fmt("%.4f", rep.loo_shift) + ", " + validation_text(rep)};
}

std::vector<RateReport> lower_reports;

Outcome lower_rate() {
  lower_reports.clear();
  std::ostringstream d;
  bool ok = true;
  for (int dim : {3, 4}) {
    const RateReport rep = run_sweep(sweep(Scenario::lower_rate, dim));
    const double lo = dim == 3 ? kLower3Lo : kLower4Lo;
    const double hi = dim == 3 ? kLower3Hi : kLower4Hi;
    bool positive = true;
    for (const auto& p : rep.points) positive = positive && p.error > 0.0;
    const bool pass = rep.fitted && rep.slope >= lo && rep.slope <= hi && positive;
    ok = ok && pass;
    d << "N=" << dim << " slope " << fmt("%.4f", rep.slope) << " (need [" << lo << ", " << hi
      << "])" << (positive ? "" : " nonpositive inf") << "; ";
    lower_reports.push_back(rep);
  }
  d << "Richardson " << (lower_reports[0].validation_clear && lower_reports[1].validation_clear
                             ? "clear"
                             : "flagged (informational)");
  return {ok, d.str()};
}

Outcome comparison() {
  if (lower_reports.empty()) lower_rate();
  double worst = std::numeric_limits<double>::infinity();
  bool ok = true;
  for (const auto& rep : lower_reports) {
    for (std::size_t k = 0; k < rep.points.size(); ++k) {
      const std::string sk = "_k" + std::to_string(k);
      const double margin = rep.metrics.at("comparison_margin" + sk);
      const double rich = rep.metrics.at("richardson_estimate" + sk);
      const double slack = margin + kComparisonFactor * rich;
      worst = std::min(worst, slack);
      ok = ok && slack >= 0.0;
    }
  }
  return {ok, "min over ladder of (u - z) + 10 * Richardson estimate = " + fmt("%.3e", worst)};
}

Outcome certificate() {
  std::ostringstream d;
  bool ok = true;
  for (int dim : {3, 4, 5}) {
    LowerBoundSpec spec;
    spec.dim = dim;
    try {
      const PlateauCertificate r = plateau_certificate(spec, 1.0, 1e3);
      const bool plateau = dim != 3 || r.last_decade_variation < kPlateauMax;
      ok = ok && plateau;
      d << "N=" << dim << " cert " << fmt("%.3e", r.certificate) << " variation "
        << fmt("%.3f", r.last_decade_variation) << "; ";
    } catch (const CertificateFailure& e) {
      ok = false;
      d << "N=" << dim << " " << e.what() << "; ";
    }
  }
  std::string text = d.str();
  if (text.size() >= 2) text.resize(text.size() - 2);
  return {ok, text};
}

Outcome picard_xval() {
  const ProblemSpec spec = harmonic_profile_spec(3, 0.1, 1.0);
  std::vector<double> times;
  for (int k = 0; k <= 10; ++k) times.push_back(0.5 + 0.05 * k);
  times.back() = 1.0;
  const PicardGrid pg = default_picard_grid(spec, 1.0, 2000, times);
  PicardConfig pc;
  pc.T = 1.0;
  const VWPair vw = picard_solve(spec, pc, pg);
  DynBCConfig dc;
  dc.stepper = pg.stepper;
  const Trajectory direct = solve_dynbc(spec, 1.0, times, pg.grid, dc);
  double diff = 0.0, umax = 0.0;
  std::size_t k = 0;
  for (std::size_t n = 0; n < pg.mesh.size() && k < times.size(); ++n) {
    if (pg.mesh[n] != times[k]) continue;
    const auto u = vw.u_at(n);
    const auto& ud = direct.states[k].interior.values;
    for (std::size_t i = 0; i < u.size(); ++i) {
      diff = std::max(diff, std::abs(u[i] - ud[i]));
      umax = std::max(umax, std::abs(ud[i]));
    }
    ++k;
  }
  const double rel = diff / umax;
  const bool ok = k == times.size() && rel < kXvalRelTol && vw.contraction_ratio <= kContractionMax &&
                  vw.uniqueness_gap <= 2.0 * pc.tol;
  return {ok, "relative discrepancy " + fmt("%.2e", rel) + ", L " + fmt("%.0f", vw.L) +
                  ", contraction " + fmt("%.3f", vw.contraction_ratio) + ", uniqueness gap " +
                  fmt("%.1e", vw.uniqueness_gap) + ", iterations " +
                  std::to_string(vw.iterations)};
}

Outcome d_eps_scaling() {
  const RateReport rep = run_sweep(sweep(Scenario::d_eps_scaling, 3));
  const bool ok = rep.fitted && std::abs(rep.slope - kDepsTarget) <= kDepsHalfWidth;
  return {ok, "slope " + fmt("%.4f", rep.slope) + " (need 0.5 +- 0.1), " + validation_text(rep)};
}

Outcome convolution_search() {
  ConvolutionParams p;
  const LStarResult r = find_L_star(p);
  bool monotone = true;
  for (std::size_t k = 1; k < r.trace.size(); ++k) {
    monotone = monotone && r.trace[k].second <= r.trace[k - 1].second + kConvMonotoneSlack;
  }
  monotone = monotone && r.sup_at_2L_star <= r.sup_at_L_star + kConvMonotoneSlack;
  ConvolutionParams z;
  z.a = z.b = z.gamma = 0.0;
  const double closed = weighted_convolution_sup(z, 1.0);
  const double closed_err = std::abs(closed - (1.0 - std::exp(-1.0)));
  const bool ok = r.sup_at_L_star <= p.delta && monotone && closed_err < kConvClosedTol;
  return {ok, "L* " + fmt("%.0f", r.L_star) + ", sup " + fmt("%.4e", r.sup_at_L_star) +
                  (monotone ? ", nonincreasing" : ", NOT monotone") + ", closed-form error " +
                  fmt("%.1e", closed_err)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  app.add_option("--only", only, "criterion numbers to run (default: all)");
  CLI11_PARSE(app, argc, argv);

  struct Criterion {
    int id;
    const char* name;
    double budget;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "kernel mass law", kMassBudget, mass_law},
      {2, "heat semigroup oracle", kOracleBudget, s1_oracle},
      {3, "upper rate", kUpperBudget, upper_rate},
      {4, "lower rate", 2.0 * kLowerBudget, lower_rate},
      {5, "comparison principle", kLowerBudget, comparison},
      {6, "heat lower-bound certificate", kCertBudget, certificate},
      {7, "fixed-point cross-validation", kPicardBudget, picard_xval},
      {8, "D operator scaling", kDepsBudget, d_eps_scaling},
      {9, "weighted convolution decay", kConvBudget, convolution_search},
  };
  const std::set<int> selected(only.begin(), only.end());
  int failures = 0;
  for (const auto& c : all) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    Outcome o;
    try {
      o = timed(c.budget, c.run);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
