#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "dynbc/dynbc_solver.hpp"
#include "dynbc/errors.hpp"

using namespace dynbc;
using doctest::Approx;

namespace {

// N = 3, eps = 0.1, phi = 1/r, phi_b = 1 on [1, 1 + 8 sqrt(5)], from an
// independent method-of-lines BDF integration of (r u)_t = (r u)_rr / eps.
struct Reference {
  double t, ub, u15, u2;
};
constexpr Reference kReference[] = {
    {0.25, 0.8009534687878114, 0.57329835246028, 0.452228187273677},
    {0.5, 0.6565093080929469, 0.485764791070729, 0.39451866091814125},
};

Trajectory reference_run(TimeScale scale) {
  const ProblemSpec spec = harmonic_profile_spec(3, 0.1, 1.0);
  const GridPtr grid = default_grid(3, 2000, 0.5, 0.1);
  DynBCConfig cfg = default_dynbc_config(0.1);
  cfg.time_scale = scale;
  const std::vector<double> times{0.25, 0.5};
  return solve_dynbc(spec, 0.5, times, grid, cfg);
}

}  // namespace

TEST_CASE("harmonic profile against an independent integrator") {
  const Trajectory traj = reference_run(TimeScale::physical);
  REQUIRE(traj.states.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& s = traj.states[k];
    const auto& g = *s.interior.grid;
    CHECK(s.time == kReference[k].t);
    CHECK(s.boundary_value == Approx(kReference[k].ub).epsilon(2e-5));
    CHECK(interpolate(g, s.interior.values, 1.5) == Approx(kReference[k].u15).epsilon(2e-5));
    CHECK(interpolate(g, s.interior.values, 2.0) == Approx(kReference[k].u2).epsilon(2e-5));
  }
  CHECK(traj.boundary_residual < 1e-8);
}

TEST_CASE("physical and fast time scales agree") {
  const Trajectory a = reference_run(TimeScale::physical);
  const Trajectory b = reference_run(TimeScale::fast);
  for (std::size_t k = 0; k < a.states.size(); ++k) {
    const auto& u = a.states[k].interior.values;
    const auto& v = b.states[k].interior.values;
    double d = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) d = std::max(d, std::abs(u[i] - v[i]));
    CHECK(d < 1e-10);
  }
}

TEST_CASE("constant boundary value with zero interior data stays bounded") {
  // Maximum principle: 0 <= u <= phi_b for phi = 0.
  const ProblemSpec spec = ProblemSpec::make(3, 0.05, [](double) { return 0.0; }, 1.0);
  const GridPtr grid = default_grid(3, 800, 1.0, 0.05);
  const std::vector<double> times{0.1, 0.5, 1.0};
  const Trajectory traj = solve_dynbc(spec, 1.0, times, grid, default_dynbc_config(0.05));
  double prev = 1.0;
  for (const auto& s : traj.states) {
    for (double v : s.interior.values) {
      CHECK(v >= -1e-12);
      CHECK(v <= 1.0 + 1e-12);
    }
    CHECK(s.boundary_value < prev);
    prev = s.boundary_value;
  }
}

TEST_CASE("error functional shrinks with epsilon") {
  double prev = 1.0;
  for (double eps : {0.1, 0.025}) {
    const ProblemSpec spec = harmonic_profile_spec(3, eps, 1.0);
    const GridPtr grid = default_grid(3, 1000, 2.0, eps);
    std::vector<double> times;
    for (int k = 0; k <= 10; ++k) times.push_back(1.0 + 0.1 * k);
    const Trajectory traj = solve_dynbc(spec, 2.0, times, grid, default_dynbc_config(eps));
    const double e = error_vs_limit(traj, spec, 1.5, 2.0, 1.0, 2.0);
    CHECK(e > 0.0);
    CHECK(e < prev);
    prev = e;
    CHECK(inf_over_window(traj, 1.5, 2.0, 1.0, 2.0) > 0.0);
    CHECK_THROWS_AS(error_vs_limit(traj, spec, 1.5, 2.0, 2.5, 3.0), ConfigError);
  }
}

TEST_CASE("cell-averaged sampling of a jump") {
  const GridPtr grid = RadialGrid::graded(3, 11, 3.0, 0.0);  // spacing 0.2, node at 2.0
  const std::vector<double> bp{2.1};
  const RadialField f =
      sample_profile(grid, [](double r) { return r > 2.1 ? 1.0 : 0.0; }, bp);
  // node 2.2 has dual cell [2.1, 2.3]: fully on the upper side.
  CHECK(f.values[6] == Approx(1.0));
  // node 2.0 has dual cell [1.9, 2.1]: fully below.
  CHECK(f.values[5] == Approx(0.0));
  const std::vector<double> mid{2.05};
  const RadialField h =
      sample_profile(grid, [](double r) { return r > 2.05 ? 1.0 : 0.0; }, mid);
  CHECK(h.values[5] == Approx(0.25).epsilon(1e-6));
}

TEST_CASE("problem validation") {
  CHECK_THROWS_AS(harmonic_profile_spec(2, 0.1, 1.0), ConfigError);
  CHECK_THROWS_AS(harmonic_profile_spec(3, 1.5, 1.0), ConfigError);
  CHECK_THROWS_AS(ProblemSpec::make(3, 0.1, [](double r) { return 1.0 / std::sqrt(r); }, 0.0),
                  ConfigError);
  CHECK(ProblemSpec::make(4, 0.1, [](double r) { return 3.0 / (r * r); }, 0.0).decay_M ==
        Approx(3.0));
  CHECK(default_outer_radius(1.0, 0.01) == Approx(81.0));
}

TEST_CASE("trajectory CSV") {
  const Trajectory traj = reference_run(TimeScale::physical);
  std::ostringstream os;
  write_trajectory_csv(traj, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,r,u");
  std::size_t rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 2 * 2000);
}

TEST_CASE("zero data stay zero") {
  const ProblemSpec spec = ProblemSpec::make(3, 0.1, [](double) { return 0.0; }, 0.0);
  const GridPtr grid = default_grid(3, 300, 1.0, 0.1);
  const std::vector<double> times{0.5, 1.0};
  const Trajectory traj = solve_dynbc(spec, 1.0, times, grid, default_dynbc_config(0.1));
  for (const auto& s : traj.states) CHECK(s.interior.sup_norm() == 0.0);
  // With phi_b = 0 the error functional is the sup of |u| itself.
  CHECK(error_vs_limit(traj, spec, 1.5, 2.0, 0.5, 1.0) == 0.0);
}

TEST_CASE("small epsilon follows the limit solution") {
  const double eps = 1e-3;
  const ProblemSpec spec = harmonic_profile_spec(3, eps, 1.0);
  const GridPtr grid = default_grid(3, 2000, 1.0, eps);
  const std::vector<double> times{1.0};
  const Trajectory traj = solve_dynbc(spec, 1.0, times, grid, default_dynbc_config(eps));
  const double u = interpolate(*grid, traj.states[0].interior.values, 2.0);
  CHECK(std::abs(u - std::exp(-1.0) / 2.0) < 0.05);
}

TEST_CASE("regression snapshot of the upper-rate functional") {
  const ProblemSpec spec = harmonic_profile_spec(3, 0.1, 1.0);
  const Resolution res;
  std::vector<double> times;
  for (int k = 0; k < 21; ++k) times.push_back(1.0 + 0.05 * k);
  const Trajectory traj = solve_dynbc(spec, 2.0, times, res.grid(3, 2.0, 0.1), res.dynbc(0.1));
  CHECK(error_vs_limit(traj, spec, 1.5, 2.0, 1.0, 2.0) ==
        Approx(0.13088498138279606).epsilon(1e-9));
}
