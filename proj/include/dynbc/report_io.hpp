#pragma once

// Rate reports: (eps, value) samples of a sweep, the log-log fit and its
// validation, serialized as CSV and JSON for the plotting script.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace dynbc {

struct RatePoint {
  double epsilon = 0.0;
  double error = 0.0;
  std::size_t grid_nodes = 0;
  double R = 0.0;
  double dt0 = 0.0;
};

// Richardson check of one ladder entry: the functional recomputed with every
// interval halved and with the truncation radius doubled.
struct ValidationEntry {
  double epsilon = 0.0;
  double base = 0.0;
  double refined = 0.0;
  double wide = 0.0;
  double refined_shift = 0.0;  // |refined - base| / |base|
  double wide_shift = 0.0;     // |wide - base| / |base|
  bool ok = true;
};

struct RateReport {
  std::string scenario;
  int dim = 3;
  std::vector<RatePoint> points;
  bool fitted = false;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
  // slope change when the largest-eps point is dropped
  double loo_shift = 0.0;
  std::vector<ValidationEntry> validation;
  bool validation_clear = true;
  // "eps=...: message" for entries whose solve failed
  std::vector<std::string> failures;
  std::map<std::string, double> metrics;
  std::map<std::string, std::string> config;
};

// Header "epsilon,error,grid_nodes,R,dt0", 17 significant digits.
void write_csv(const RateReport& report, std::ostream& out);

std::string report_to_json(const RateReport& report);
// Throws ConfigError on malformed input.
RateReport report_from_json(const std::string& text);

// Writes <stem>.csv and <stem>.json. Throws ConfigError when a file cannot be
// written.
void emit_report(const RateReport& report, const std::filesystem::path& stem);
RateReport read_report(const std::filesystem::path& json_path);

}  // namespace dynbc
