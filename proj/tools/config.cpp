#include "config.hpp"

#include "cornerheat/corner_params.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace cornerheat::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& section, const std::string& key,
                    const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(section + "." + key + ": expected a number, got '" +
                      value + "'");
  }
}

long parse_long(const std::string& section, const std::string& key,
                const std::string& value) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(section + "." + key + ": expected an integer, got '" +
                      value + "'");
  }
}

}  // namespace

IniFile IniFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

IniFile IniFile::parse_string(const std::string& text) {
  IniFile ini;
  std::stringstream ss(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(lineno) +
                          ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      ini.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    }
    ini.sections_[section][key] = value;
  }
  return ini;
}

bool IniFile::has(const std::string& section, const std::string& key) const {
  const auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

std::string IniFile::get(const std::string& section, const std::string& key) const {
  return sections_.at(section).at(key);
}

std::string IniFile::get_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

double IniFile::get_double(const std::string& section, const std::string& key,
                           double fallback) const {
  if (!has(section, key)) return fallback;
  return parse_double(section, key, get(section, key));
}

long IniFile::get_long(const std::string& section, const std::string& key,
                       long fallback) const {
  if (!has(section, key)) return fallback;
  return parse_long(section, key, get(section, key));
}

double resolve_lambda(const std::string& spec, int dim, int corner) {
  const double sharp = hardy_constant<double>(dim, corner);
  if (spec == "critical") return sharp;
  if (spec == "half_critical") return sharp / 2;
  try {
    std::size_t pos = 0;
    const double v = std::stod(spec, &pos);
    if (pos != spec.size()) throw std::invalid_argument(spec);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("params.lambda: expected a number, 'critical' or "
                      "'half_critical', got '" + spec + "'");
  }
}

namespace {

void check_known_keys(const IniFile& ini, const std::string& command) {
  static const std::map<std::string, std::set<std::string>> known = {
      {"params", {"dim", "corner", "lambda"}},
      {"grid", {"r_max", "r_min", "n"}},
      {"eigen", {"count", "tol", "pass_tol", "mode"}},
      {"hardy", {"epsilons", "nodes", "gap_log_bound"}},
      {"evolve",
       {"ds", "s_end", "s_burn", "snapshot_stride", "norm_stride",
        "initial_data", "seed", "bumps", "fit_tol_rel"}},
      {"sweep", {"dims", "corners", "lambdas", "threads"}},
  };
  for (const auto& [section, keys] : ini.sections()) {
    const auto it = known.find(section);
    if (it == known.end()) {
      throw ConfigError("unknown config section [" + section + "]");
    }
    for (const auto& [key, value] : keys) {
      if (!it->second.count(key)) {
        throw ConfigError("unknown key " + section + "." + key);
      }
    }
  }
  (void)command;
}

}  // namespace

ExperimentConfig load_config(const IniFile& ini, const std::string& command) {
  check_known_keys(ini, command);
  ExperimentConfig cfg;

  const long dim = ini.get_long("params", "dim", cfg.params.dim);
  const long corner = ini.get_long("params", "corner", cfg.params.corner);
  if (dim < 2) throw ConfigError("params.dim: must be >= 2");
  if (corner < 0 || corner > dim) {
    throw ConfigError("params.corner: must lie in [0, params.dim]");
  }
  cfg.params.dim = static_cast<int>(dim);
  cfg.params.corner = static_cast<int>(corner);
  cfg.params.lambda_spec = ini.get_or("params", "lambda", cfg.params.lambda_spec);
  // validates the spelling and the well-posedness range
  const double lambda =
      resolve_lambda(cfg.params.lambda_spec, cfg.params.dim, cfg.params.corner);
  if (lambda > hardy_constant<double>(cfg.params.dim, cfg.params.corner)) {
    throw ConfigError("params.lambda: exceeds the sharp Hardy constant (supercritical)");
  }

  cfg.grid.r_max = ini.get_double("grid", "r_max", cfg.grid.r_max);
  cfg.grid.r_min = ini.get_double("grid", "r_min", 1e-4 * cfg.grid.r_max);
  cfg.grid.n = ini.get_long("grid", "n", cfg.grid.n);
  if (!(cfg.grid.r_min > 0) || !(cfg.grid.r_min < cfg.grid.r_max)) {
    throw ConfigError("grid.r_min: requires 0 < r_min < r_max");
  }
  if (cfg.grid.n < 3) throw ConfigError("grid.n: must be >= 3");

  cfg.eigen.count = ini.get_long("eigen", "count", cfg.eigen.count);
  cfg.eigen.tol = ini.get_double("eigen", "tol", cfg.eigen.tol);
  cfg.eigen.pass_tol = ini.get_double("eigen", "pass_tol", cfg.eigen.pass_tol);
  cfg.eigen.mode = ini.get_or("eigen", "mode", cfg.eigen.mode);
  if (cfg.eigen.count < 1) throw ConfigError("eigen.count: must be >= 1");
  if (!(cfg.eigen.tol > 0)) throw ConfigError("eigen.tol: must be > 0");
  if (cfg.eigen.mode != "direct" && cfg.eigen.mode != "extrapolated" &&
      cfg.eigen.mode != "auto") {
    throw ConfigError("eigen.mode: expected direct, extrapolated or auto");
  }

  if (ini.has("hardy", "epsilons")) {
    cfg.hardy.epsilons.clear();
    for (const auto& item : split_list(ini.get("hardy", "epsilons"))) {
      cfg.hardy.epsilons.push_back(parse_double("hardy", "epsilons", item));
    }
  }
  for (const double e : cfg.hardy.epsilons) {
    if (!(e > 0) || !(e < 0.25)) {
      throw ConfigError("hardy.epsilons: every entry must lie in (0, 1/4)");
    }
  }
  if (cfg.hardy.epsilons.empty()) throw ConfigError("hardy.epsilons: empty list");
  cfg.hardy.nodes = ini.get_long("hardy", "nodes", cfg.hardy.nodes);
  if (cfg.hardy.nodes < 1000) throw ConfigError("hardy.nodes: must be >= 1000");
  cfg.hardy.gap_log_bound = ini.get_double("hardy", "gap_log_bound",
                                           cfg.hardy.gap_log_bound);

  cfg.evolve.ds = ini.get_double("evolve", "ds", cfg.evolve.ds);
  cfg.evolve.s_end = ini.get_double("evolve", "s_end", cfg.evolve.s_end);
  cfg.evolve.s_burn = ini.get_double("evolve", "s_burn", cfg.evolve.s_burn);
  cfg.evolve.snapshot_stride = static_cast<int>(
      ini.get_long("evolve", "snapshot_stride", cfg.evolve.snapshot_stride));
  cfg.evolve.norm_stride = static_cast<int>(
      ini.get_long("evolve", "norm_stride", cfg.evolve.norm_stride));
  cfg.evolve.initial_data = ini.get_or("evolve", "initial_data",
                                       cfg.evolve.initial_data);
  cfg.evolve.seed = static_cast<unsigned long>(
      ini.get_long("evolve", "seed", static_cast<long>(cfg.evolve.seed)));
  cfg.evolve.bumps = static_cast<int>(ini.get_long("evolve", "bumps",
                                                   cfg.evolve.bumps));
  cfg.evolve.fit_tol_rel = ini.get_double("evolve", "fit_tol_rel",
                                          cfg.evolve.fit_tol_rel);
  if (!(cfg.evolve.ds > 0)) throw ConfigError("evolve.ds: must be > 0");
  if (!(cfg.evolve.s_end > 0)) throw ConfigError("evolve.s_end: must be > 0");
  if (cfg.evolve.snapshot_stride < 1 || cfg.evolve.norm_stride < 1) {
    throw ConfigError("evolve.snapshot_stride/norm_stride: must be >= 1");
  }
  if (cfg.evolve.initial_data != "eigenfunction" &&
      cfg.evolve.initial_data != "random_bumps" &&
      cfg.evolve.initial_data != "random_orthogonal") {
    throw ConfigError("evolve.initial_data: expected eigenfunction, "
                      "random_bumps or random_orthogonal");
  }
  if (cfg.evolve.bumps < 1) throw ConfigError("evolve.bumps: must be >= 1");

  if (ini.has("sweep", "dims")) {
    cfg.sweep.dims.clear();
    for (const auto& item : split_list(ini.get("sweep", "dims"))) {
      cfg.sweep.dims.push_back(static_cast<int>(parse_long("sweep", "dims", item)));
    }
  }
  if (ini.has("sweep", "corners")) {
    cfg.sweep.corners.clear();
    for (const auto& item : split_list(ini.get("sweep", "corners"))) {
      cfg.sweep.corners.push_back(
          static_cast<int>(parse_long("sweep", "corners", item)));
    }
  }
  if (ini.has("sweep", "lambdas")) {
    cfg.sweep.lambdas = split_list(ini.get("sweep", "lambdas"));
  }
  cfg.sweep.threads = static_cast<int>(ini.get_long("sweep", "threads",
                                                    cfg.sweep.threads));
  if (cfg.sweep.dims.empty() || cfg.sweep.corners.empty() ||
      cfg.sweep.lambdas.empty()) {
    throw ConfigError("sweep.dims/corners/lambdas: lists must be nonempty");
  }
  for (const int d : cfg.sweep.dims) {
    if (d < 2) throw ConfigError("sweep.dims: every dim must be >= 2");
  }
  for (const int k : cfg.sweep.corners) {
    if (k < 0) throw ConfigError("sweep.corners: every corner must be >= 0");
  }
  if (cfg.sweep.threads < 0) throw ConfigError("sweep.threads: must be >= 0");

  return cfg;
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo(
    const std::string& command) const {
  auto num = [](double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  };
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("command", command);
  kv.emplace_back("params.dim", std::to_string(params.dim));
  kv.emplace_back("params.corner", std::to_string(params.corner));
  kv.emplace_back("params.lambda", params.lambda_spec);
  kv.emplace_back("grid.r_max", num(grid.r_max));
  kv.emplace_back("grid.r_min", num(grid.r_min));
  kv.emplace_back("grid.n", std::to_string(grid.n));
  if (command == "eigen" || command == "evolve" || command == "sweep") {
    kv.emplace_back("eigen.count", std::to_string(eigen.count));
    kv.emplace_back("eigen.tol", num(eigen.tol));
    kv.emplace_back("eigen.pass_tol", num(eigen.pass_tol));
    kv.emplace_back("eigen.mode", eigen.mode);
  }
  if (command == "hardy") {
    std::string eps;
    for (std::size_t i = 0; i < hardy.epsilons.size(); ++i) {
      if (i) eps += ",";
      eps += num(hardy.epsilons[i]);
    }
    kv.emplace_back("hardy.epsilons", eps);
    kv.emplace_back("hardy.nodes", std::to_string(hardy.nodes));
    kv.emplace_back("hardy.gap_log_bound", num(hardy.gap_log_bound));
  }
  if (command == "evolve" || command == "sweep") {
    kv.emplace_back("evolve.ds", num(evolve.ds));
    kv.emplace_back("evolve.s_end", num(evolve.s_end));
    kv.emplace_back("evolve.s_burn", num(evolve.s_burn));
    kv.emplace_back("evolve.snapshot_stride", std::to_string(evolve.snapshot_stride));
    kv.emplace_back("evolve.norm_stride", std::to_string(evolve.norm_stride));
    kv.emplace_back("evolve.initial_data", evolve.initial_data);
    kv.emplace_back("evolve.seed", std::to_string(evolve.seed));
    kv.emplace_back("evolve.bumps", std::to_string(evolve.bumps));
    kv.emplace_back("evolve.fit_tol_rel", num(evolve.fit_tol_rel));
  }
  if (command == "sweep") {
    auto join_i = [](const std::vector<int>& v) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
      }
      return s;
    };
    std::string ls;
    for (std::size_t i = 0; i < sweep.lambdas.size(); ++i) {
      if (i) ls += ",";
      ls += sweep.lambdas[i];
    }
    kv.emplace_back("sweep.dims", join_i(sweep.dims));
    kv.emplace_back("sweep.corners", join_i(sweep.corners));
    kv.emplace_back("sweep.lambdas", ls);
    kv.emplace_back("sweep.threads", std::to_string(sweep.threads));
  }
  return kv;
}

}  // namespace cornerheat::cli
