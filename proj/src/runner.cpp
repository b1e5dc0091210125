#include "rhd/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>

namespace rhd {

RunResult run_problem(const RunConfig& cfg, const RunHooks& hooks) {
  const ProblemSpec& prob = find_problem(cfg.problem);
  const std::string mesh_spec = cfg.mesh.empty() ? prob.default_mesh : cfg.mesh;

  RunResult res;
  res.mesh = std::make_shared<Mesh>(mesh_from_spec(mesh_spec));
  const Mesh& mesh = *res.mesh;
  if (prob.axisymmetric) {
    for (const Node& n : mesh.nodes)
      if (n.x < -1e-12) throw MeshError("axisymmetric mesh extends to r < 0");
  }

  Reconstruction rec(mesh);

  SolverOptions opt;
  opt.eos = prob.eos;
  opt.cfl = cfg.cfl;
  opt.limiter_on = cfg.limiter_on;
  opt.axisymmetric = prob.axisymmetric;
  opt.weno.scaling_invariant = cfg.weights_invariant;
  opt.recovery = cfg.recovery;
  opt.eps_floor = cfg.eps_zero_mode ? 0.0 : 1e-13;

  Solver solver(rec, boundary_conditions(mesh, prob, cfg.scale_initial), opt);

  RecoveryCapture capture;
  if (!cfg.capture_recovery.empty()) {
    capture.stride = std::max(1, cfg.capture_stride);
    solver.capture = &capture;
  }

  res.means = project_initial(mesh, prob, cfg.scale_initial);

  std::filesystem::create_directories(cfg.out_dir);
  RunLog log(cfg.out_dir + "/runlog.csv");

  const double tmax = cfg.tmax >= 0 ? cfg.tmax : prob.tmax;
  double t = 0;
  long step = 0;
  double next_snapshot = cfg.output_interval > 0 ? cfg.output_interval : tmax * 2;
  int snap_id = 0;

  auto totals = [&]() {
    Vec4 tot{};
    for (int k = 0; k < mesh.ncells(); ++k) tot += mesh.tris[k].area * res.means[k];
    return tot;
  };
  auto snapshot = [&](const std::string& tag) {
    if (cfg.write_csv)
      write_snapshot_csv(cfg.out_dir + "/snap_" + tag + ".csv", mesh, res.means,
                         prob.eos);
    if (cfg.write_vtk)
      write_snapshot_vtk(cfg.out_dir + "/snap_" + tag + ".vtk", mesh, res.means,
                         prob.eos);
    if (!cfg.dump_weights.empty()) {
      WenoOptions wopt;
      wopt.scaling_invariant = cfg.weights_invariant;
      write_weights_dump(cfg.dump_weights + "." + tag, rec, res.means, wopt);
    }
  };

  const auto t0 = std::chrono::steady_clock::now();
  try {
    while (t < tmax * (1.0 - 1e-14)) {
      if (cfg.max_steps >= 0 && step >= cfg.max_steps) break;
      if (solver.capture) capture.active_this_step = (step % capture.stride == 0);
      StepStats st = solver.step(res.means, t, tmax - t);
      t += st.dt;
      ++step;
      res.total_retries += st.retries;
      const double theta = st.limiter.ratio();
      res.theta_mean += theta;
      res.theta_max = std::max(res.theta_max, theta);
      log.row(step, t, st.dt, st.limiter, st.retries, totals());
      if (hooks.per_step) hooks.per_step(step, t, res.means, st, solver);
      if (cfg.output_interval > 0 && t >= next_snapshot - 1e-14) {
        snapshot(std::to_string(snap_id++));
        next_snapshot += cfg.output_interval;
      }
    }
    res.exit_code = 0;
  } catch (const AdmissibilityAbort& ab) {
    write_abort_dump(cfg.out_dir + "/abort_dump.csv", mesh, res.means, ab.cell, ab.time,
                     ab.what());
    res.exit_code = 2;
    res.message = ab.what();
  }
  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  res.steps = step;
  res.t_end = t;
  if (step > 0) res.theta_mean /= step;

  if (res.exit_code == 0) snapshot("final");
  if (solver.capture && !capture.data.empty())
    save_capture(cfg.capture_recovery, capture.data);
  return res;
}

}  // namespace rhd
