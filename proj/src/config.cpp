#include <algorithm>
#include <boost/algorithm/string/trim.hpp>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "dynbc/errors.hpp"
#include "dynbc/sweep.hpp"

namespace dynbc {

namespace {

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (x != static_cast<int>(x)) throw ConfigError("config: '" + key + "' expects an integer");
  return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config: '" + key + "' expects true/false");
}

}  // namespace

SweepConfig parse_sweep_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    boost::algorithm::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = boost::algorithm::trim_copy(line.substr(0, eq));
    std::string value = boost::algorithm::trim_copy(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    if (kv.count(key)) throw ConfigError("config: duplicate key '" + key + "'");
    kv[key] = value;
  }

  SweepConfig cfg;
  if (auto it = kv.find("tier"); it != kv.end()) {
    cfg.tier = parse_tier(it->second);
    cfg.resolution = tier_resolution(cfg.tier);
    cfg.ladder = tier_ladder(cfg.tier);
    kv.erase(it);
  }
  for (const auto& [key, v] : kv) {
    if (key == "dim") {
      cfg.dim = to_int(key, v);
    } else if (key == "epsilon_ladder") {
      cfg.ladder.clear();
      std::stringstream s(v);
      std::string item;
      while (std::getline(s, item, ',')) {
        boost::algorithm::trim(item);
        cfg.ladder.push_back(to_double(key, item));
      }
    } else if (key == "scenario") {
      cfg.scenario = parse_scenario(v);
    } else if (key == "grid_nodes") {
      const int n = to_int(key, v);
      if (n < 3) throw ConfigError("config: grid_nodes must be >= 3");
      cfg.resolution.nodes = static_cast<std::size_t>(n);
    } else if (key == "grading_sigma") {
      cfg.resolution.sigma = to_double(key, v);
    } else if (key == "R_policy") {
      cfg.resolution.R = v == "default" ? 0.0 : to_double(key, v);
      if (v != "default" && !(cfg.resolution.R > 2.0)) {
        throw ConfigError("config: R_policy must be 'default' or a radius > 2");
      }
    } else if (key == "theta") {
      cfg.resolution.theta = to_double(key, v);
    } else if (key == "dt0_factor") {
      cfg.resolution.dt0_factor = to_double(key, v);
    } else if (key == "dt_growth") {
      cfg.resolution.dt_growth = to_double(key, v);
    } else if (key == "K_r_min") {
      cfg.r_min = to_double(key, v);
    } else if (key == "K_r_max") {
      cfg.r_max = to_double(key, v);
    } else if (key == "t1") {
      cfg.t1 = to_double(key, v);
    } else if (key == "t2") {
      cfg.t2 = to_double(key, v);
    } else if (key == "workers") {
      cfg.workers = to_int(key, v);
    } else if (key == "b") {
      cfg.b = to_double(key, v);
    } else if (key == "t_eval") {
      cfg.t_eval = to_double(key, v);
    } else if (key == "time_samples") {
      cfg.time_samples = to_int(key, v);
    } else if (key == "richardson") {
      cfg.richardson = to_bool(key, v);
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config: cannot open " + path);
  return parse_sweep_config(f);
}

}  // namespace dynbc
