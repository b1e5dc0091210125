#ifndef RHD_RUNNER_HPP
#define RHD_RUNNER_HPP

#include <functional>
#include <memory>

#include "rhd/config.hpp"
#include "rhd/io.hpp"
#include "rhd/meshgen.hpp"
#include "rhd/problems.hpp"
#include "rhd/solver.hpp"

namespace rhd {

struct RunResult {
  int exit_code = 0;  // 0 ok, 2 admissibility abort
  std::string message;
  long steps = 0;
  double t_end = 0;
  double wall_seconds = 0;
  double theta_mean = 0;   // limited-cell ratio averaged over steps
  double theta_max = 0;
  long total_retries = 0;
  std::vector<Vec4> means;
  std::shared_ptr<Mesh> mesh;
};

struct RunHooks {
  // called after every accepted step
  std::function<void(long step, double t, const std::vector<Vec4>& means,
                     const StepStats& stats, const Solver& solver)>
      per_step;
};

RunResult run_problem(const RunConfig& cfg, const RunHooks& hooks = {});

}  // namespace rhd

#endif
