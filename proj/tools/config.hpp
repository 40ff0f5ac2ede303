#pragma once

// Flat INI-style experiment configs: [section] headers, key = value lines,
// '#' comments.  Every module precondition is re-validated at parse time so
// a bad config fails with the offending section.key named.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cornerheat::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class IniFile {
 public:
  static IniFile parse_file(const std::string& path);
  static IniFile parse_string(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;

  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  long get_long(const std::string& section, const std::string& key,
                long fallback) const;

  // keys actually present, for config echo and unknown-key detection
  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return sections_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

struct ParamsConfig {
  int dim = 3;
  int corner = 1;
  std::string lambda_spec = "0";  // number | "critical" | "half_critical"
};

struct GridConfig {
  double r_max = 20.0;
  double r_min = 2e-3;  // 1e-4 * r_max by default
  long n = 20000;
};

struct EigenConfig {
  long count = 2;
  double tol = 1e-10;
  double pass_tol = 1e-2;     // absolute tolerance on |mu0 - mu0_exact|
  std::string mode = "auto";  // direct | extrapolated | auto
};

struct HardyConfig {
  std::vector<double> epsilons = {1e-1, 1e-2, 1e-3};
  long nodes = 200000;
  double gap_log_bound = 8.0;
};

struct EvolveConfig {
  double ds = 1e-3;
  double s_end = 8.0;
  double s_burn = 1.0;
  int snapshot_stride = 100;
  int norm_stride = 10;
  std::string initial_data = "random_bumps";  // eigenfunction | random_bumps | random_orthogonal
  unsigned long seed = 42;
  int bumps = 3;
  double fit_tol_rel = 0.02;
};

struct SweepConfig {
  std::vector<int> dims = {4};
  std::vector<int> corners = {0, 1, 2};
  std::vector<std::string> lambdas = {"0"};
  int threads = 0;  // 0 = hardware concurrency
};

struct ExperimentConfig {
  ParamsConfig params;
  GridConfig grid;
  EigenConfig eigen;
  HardyConfig hardy;
  EvolveConfig evolve;
  SweepConfig sweep;

  // materialized key/value view, echoed into every CSV header
  std::vector<std::pair<std::string, std::string>> echo(const std::string& command) const;
};

ExperimentConfig load_config(const IniFile& ini, const std::string& command);

// lambda_spec -> numeric coupling for a given (dim, corner)
double resolve_lambda(const std::string& spec, int dim, int corner);

}  // namespace cornerheat::cli
