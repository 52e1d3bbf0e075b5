#pragma once

// Epsilon sweeps: run one scenario per ladder entry, fit the log-log slope,
// and recompute every entry at halved step and doubled radius.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dynbc/dynbc_solver.hpp"
#include "dynbc/report_io.hpp"

namespace dynbc {

enum class Scenario { upper_rate, lower_rate, d_eps_scaling, picard_xval };
enum class Tier { smoke, standard, thorough };

std::string to_string(Scenario s);
std::string to_string(Tier t);
// Throw ConfigError on an unknown name.
Scenario parse_scenario(const std::string& name);
Tier parse_tier(const std::string& name);

// Grid size and step growth bound to a tier.
Resolution tier_resolution(Tier t);
// 0.1 * 2^{-k}, k = 0 .. depth-1 with depth 4 / 5 / 6.
std::vector<double> tier_ladder(Tier t);

struct SweepConfig {
  Scenario scenario = Scenario::upper_rate;
  int dim = 3;
  std::vector<double> ladder = tier_ladder(Tier::standard);
  double r_min = 1.5;
  double r_max = 2.0;
  double t1 = 1.0;
  double t2 = 2.0;
  // Evaluation time of the D-operator scenario.
  double t_eval = 1.0;
  // Cutoff radius of the lower-rate datum.
  double b = 2.0;
  int time_samples = 21;
  Tier tier = Tier::standard;
  Resolution resolution = tier_resolution(Tier::standard);
  int workers = 1;
  bool richardson = true;
  // Relative shift that raises a Richardson flag.
  double richardson_tolerance = 0.2;

  // Throws ConfigError: dim >= 3, ladder of >= 4 strictly decreasing values
  // in (0, 1) spanning a factor >= 8, 1 < r_min <= r_max,
  // 0 < t1 <= t2, workers >= 1.
  void validate() const;
};

// Echo of every setting as strings (stored in the report).
std::map<std::string, std::string> config_echo(const SweepConfig& cfg);

// Throws ConfigError for invalid configs and SolverError when more than
// half of the ladder fails.
RateReport run_sweep(const SweepConfig& cfg);

// key=value lines, '#' comments. Keys: dim, epsilon_ladder, scenario,
// grid_nodes, grading_sigma, R_policy, theta, dt0_factor, dt_growth, K_r_min,
// K_r_max, t1, t2, workers, tier, b, t_eval, time_samples, richardson.
// `tier` is applied before the individual resolution keys.
SweepConfig parse_sweep_config(std::istream& in);
SweepConfig load_sweep_config(const std::string& path);

}  // namespace dynbc
