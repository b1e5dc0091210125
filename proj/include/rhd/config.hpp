#ifndef RHD_CONFIG_HPP
#define RHD_CONFIG_HPP

#include <stdexcept>
#include <string>

#include "rhd/recovery.hpp"

namespace rhd {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct RunConfig {
  std::string problem;
  std::string mesh;  // generator spec or file path; empty: problem default
  double tmax = -1;  // < 0: problem default
  double cfl = 0.5;
  std::string out_dir = "out";
  bool weights_invariant = true;
  RecoveryAlg recovery = RecoveryAlg::Hybrid;
  bool limiter_on = true;
  double output_interval = 0;  // 0: final snapshot only
  bool write_csv = true;
  bool write_vtk = false;
  bool eps_zero_mode = false;   // homogeneity test mode: limiter floors set to 0
  double scale_initial = 1.0;   // multiplies rho and p of the initial data
  std::string dump_weights;     // per-cell WENO weight dump path
  std::string capture_recovery; // recovery stream capture path
  int capture_stride = 50;
  long max_steps = -1;
};

// flat key = value text; '#' comments; unknown keys rejected
RunConfig load_config(const std::string& path);
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

RecoveryAlg parse_recovery(const std::string& name);
const char* recovery_name(RecoveryAlg alg);

}  // namespace rhd

#endif
