#include <CLI11.hpp>
#include <cstdio>

#include "rhd/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"PCP finite volume solver for 2D special relativistic hydrodynamics"};

  std::string config_path, mesh, problem, out_dir, weights, recovery, limiter,
      eps_mode, dump_weights, capture;
  double tmax = -2, cfl = -1, output_interval = -1, scale = -2;
  long max_steps = -2;
  bool vtk = false, list = false;

  app.add_option("--config", config_path, "flat key=value config file");
  app.add_option("--mesh", mesh, "mesh file path or generator spec");
  app.add_option("--problem", problem, "problem name from the built-in library");
  app.add_option("--tmax", tmax, "end time override");
  app.add_option("--cfl", cfl, "CFL factor (default 0.5)");
  app.add_option("--weights", weights, "nonlinear weights: invariant|original");
  app.add_option("--recovery", recovery,
                 "recovery algorithm: hybrid|bisection|fixedpoint|newton");
  app.add_option("--limiter", limiter, "PCP limiter: on|off");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--output-interval", output_interval, "snapshot interval (0: final only)");
  app.add_option("--scale", scale, "scale initial rho and p by this factor");
  app.add_option("--eps-mode", eps_mode, "limiter floors: default|zero");
  app.add_option("--dump-weights", dump_weights, "write per-cell WENO weights here");
  app.add_option("--capture", capture, "capture recovery inputs to this file");
  app.add_option("--max-steps", max_steps, "stop after this many steps");
  app.add_flag("--vtk", vtk, "also write VTK snapshots");
  app.add_flag("--list", list, "list available problems and exit");

  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& n : rhd::problem_names()) std::puts(n.c_str());
    return 0;
  }

  rhd::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = rhd::load_config(config_path);
    if (!mesh.empty()) cfg.mesh = mesh;
    if (!problem.empty()) cfg.problem = problem;
    if (tmax > -2) cfg.tmax = tmax;
    if (cfl > 0) cfg.cfl = cfl;
    if (!weights.empty()) rhd::apply_config_entry(cfg, "weights", weights);
    if (!recovery.empty()) rhd::apply_config_entry(cfg, "recovery", recovery);
    if (!limiter.empty()) rhd::apply_config_entry(cfg, "limiter", limiter);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (output_interval >= 0) cfg.output_interval = output_interval;
    if (scale > -2) cfg.scale_initial = scale;
    if (!eps_mode.empty()) rhd::apply_config_entry(cfg, "eps_mode", eps_mode);
    if (!dump_weights.empty()) cfg.dump_weights = dump_weights;
    if (!capture.empty()) cfg.capture_recovery = capture;
    if (max_steps > -2) cfg.max_steps = max_steps;
    if (vtk) cfg.write_vtk = true;
    if (cfg.problem.empty()) {
      std::fprintf(stderr, "error: no problem selected (use --problem or a config)\n");
      return 1;
    }

    const rhd::RunResult res = rhd::run_problem(cfg);
    if (res.exit_code == 2) {
      std::fprintf(stderr, "admissibility abort: %s (dump in %s)\n",
                   res.message.c_str(), cfg.out_dir.c_str());
      return 2;
    }
    std::printf("problem=%s cells=%d steps=%ld t=%.6g wall=%.2fs\n",
                cfg.problem.c_str(), res.mesh->ncells(), res.steps, res.t_end,
                res.wall_seconds);
    std::printf("limiter: mean ratio %.4g%%, max ratio %.4g%%, retries %ld\n",
                100.0 * res.theta_mean, 100.0 * res.theta_max, res.total_retries);
    return 0;
  } catch (const rhd::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const rhd::MeshError& e) {
    std::fprintf(stderr, "mesh error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
