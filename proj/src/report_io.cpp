#include "dynbc/report_io.hpp"

#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "dynbc/errors.hpp"

namespace dynbc {

using nlohmann::json;

void write_csv(const RateReport& report, std::ostream& out) {
  std::ostringstream s;
  s.precision(17);
  s << "epsilon,error,grid_nodes,R,dt0\n";
  for (const auto& p : report.points) {
    s << p.epsilon << ',' << p.error << ',' << p.grid_nodes << ',' << p.R << ',' << p.dt0 << '\n';
  }
  out << s.str();
}

std::string report_to_json(const RateReport& r) {
  json j;
  j["scenario"] = r.scenario;
  j["dim"] = r.dim;
  j["points"] = json::array();
  for (const auto& p : r.points) {
    j["points"].push_back({{"epsilon", p.epsilon},
                           {"error", p.error},
                           {"grid_nodes", p.grid_nodes},
                           {"R", p.R},
                           {"dt0", p.dt0}});
  }
  j["fitted"] = r.fitted;
  j["slope"] = r.slope;
  j["intercept"] = r.intercept;
  j["residual"] = r.residual;
  j["loo_shift"] = r.loo_shift;
  j["validation"] = json::array();
  for (const auto& v : r.validation) {
    j["validation"].push_back({{"epsilon", v.epsilon},
                               {"base", v.base},
                               {"refined", v.refined},
                               {"wide", v.wide},
                               {"refined_shift", v.refined_shift},
                               {"wide_shift", v.wide_shift},
                               {"ok", v.ok}});
  }
  j["validation_clear"] = r.validation_clear;
  j["failures"] = r.failures;
  j["metrics"] = r.metrics;
  j["config"] = r.config;
  return j.dump(2);
}

RateReport report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    RateReport r;
    r.scenario = j.at("scenario").get<std::string>();
    r.dim = j.at("dim").get<int>();
    for (const auto& p : j.at("points")) {
      RatePoint q;
      q.epsilon = p.at("epsilon").get<double>();
      q.error = p.at("error").get<double>();
      q.grid_nodes = p.at("grid_nodes").get<std::size_t>();
      q.R = p.at("R").get<double>();
      q.dt0 = p.at("dt0").get<double>();
      r.points.push_back(q);
    }
    r.fitted = j.at("fitted").get<bool>();
    r.slope = j.at("slope").get<double>();
    r.intercept = j.at("intercept").get<double>();
    r.residual = j.at("residual").get<double>();
    r.loo_shift = j.at("loo_shift").get<double>();
    for (const auto& v : j.at("validation")) {
      ValidationEntry e;
      e.epsilon = v.at("epsilon").get<double>();
      e.base = v.at("base").get<double>();
      e.refined = v.at("refined").get<double>();
      e.wide = v.at("wide").get<double>();
      e.refined_shift = v.at("refined_shift").get<double>();
      e.wide_shift = v.at("wide_shift").get<double>();
      e.ok = v.at("ok").get<bool>();
      r.validation.push_back(e);
    }
    r.validation_clear = j.at("validation_clear").get<bool>();
    r.failures = j.at("failures").get<std::vector<std::string>>();
    r.metrics = j.at("metrics").get<std::map<std::string, double>>();
    r.config = j.at("config").get<std::map<std::string, std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("report_from_json: ") + e.what());
  }
}

void emit_report(const RateReport& report, const std::filesystem::path& stem) {
  auto write = [](const std::filesystem::path& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("emit_report: cannot open " + path.string());
    f << body;
    if (!f) throw ConfigError("emit_report: write failed for " + path.string());
  };
  std::ostringstream csv;
  write_csv(report, csv);
  write(std::filesystem::path(stem).concat(".csv"), csv.str());
  write(std::filesystem::path(stem).concat(".json"), report_to_json(report) + "\n");
}

RateReport read_report(const std::filesystem::path& json_path) {
  std::ifstream f(json_path);
  if (!f) throw ConfigError("read_report: cannot open " + json_path.string());
  std::ostringstream s;
  s << f.rdbuf();
  return report_from_json(s.str());
}

}  // namespace dynbc
