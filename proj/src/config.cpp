#include "rhd/config.hpp"

#include <fstream>
#include <sstream>

namespace rhd {

RecoveryAlg parse_recovery(const std::string& name) {
  if (name == "hybrid") return RecoveryAlg::Hybrid;
  if (name == "bisection") return RecoveryAlg::Bisection;
  if (name == "fixedpoint") return RecoveryAlg::FixedPoint;
  if (name == "newton") return RecoveryAlg::Newton;
  throw ConfigError("unknown recovery algorithm: " + name);
}

const char* recovery_name(RecoveryAlg alg) {
  switch (alg) {
    case RecoveryAlg::Bisection: return "bisection";
    case RecoveryAlg::FixedPoint: return "fixedpoint";
    case RecoveryAlg::Newton: return "newton";
    default: return "hybrid";
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("bad boolean for " + key + ": " + v);
}

double parse_num(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("bad number for " + key + ": " + v);
  }
}

}  // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value) {
  if (key == "problem")
    cfg.problem = value;
  else if (key == "mesh")
    cfg.mesh = value;
  else if (key == "tmax")
    cfg.tmax = parse_num(key, value);
  else if (key == "cfl")
    cfg.cfl = parse_num(key, value);
  else if (key == "out")
    cfg.out_dir = value;
  else if (key == "weights") {
    if (value == "invariant")
      cfg.weights_invariant = true;
    else if (value == "original")
      cfg.weights_invariant = false;
    else
      throw ConfigError("weights must be 'invariant' or 'original'");
  } else if (key == "recovery")
    cfg.recovery = parse_recovery(value);
  else if (key == "limiter")
    cfg.limiter_on = parse_bool(key, value);
  else if (key == "output_interval")
    cfg.output_interval = parse_num(key, value);
  else if (key == "csv")
    cfg.write_csv = parse_bool(key, value);
  else if (key == "vtk")
    cfg.write_vtk = parse_bool(key, value);
  else if (key == "eps_mode") {
    if (value == "zero")
      cfg.eps_zero_mode = true;
    else if (value == "default")
      cfg.eps_zero_mode = false;
    else
      throw ConfigError("eps_mode must be 'default' or 'zero'");
  } else if (key == "scale_initial")
    cfg.scale_initial = parse_num(key, value);
  else if (key == "dump_weights")
    cfg.dump_weights = value;
  else if (key == "capture_recovery")
    cfg.capture_recovery = value;
  else if (key == "capture_stride")
    cfg.capture_stride = (int)parse_num(key, value);
  else if (key == "max_steps")
    cfg.max_steps = (long)parse_num(key, value);
  else
    throw ConfigError("unknown config key: " + key);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

}  // namespace rhd
