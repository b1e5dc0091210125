#ifndef RHD_SOLVER_HPP
#define RHD_SOLVER_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rhd/limiter.hpp"
#include "rhd/reconstruction.hpp"

namespace rhd {

struct BoundaryCondition {
  enum class Kind { Outflow, Reflective, Inflow, MovingShock };
  Kind kind = Kind::Outflow;
  ConservedState inflow_U{};
  PrimitiveState inflow_W{};
  // moving planar shock along x: left/right of x0 + speed * t
  ConservedState shock_UL{}, shock_UR{};
  PrimitiveState shock_WL{}, shock_WR{};
  double shock_x0 = 0, shock_speed = 0;

  static BoundaryCondition outflow() { return {}; }
  static BoundaryCondition reflective() {
    BoundaryCondition b;
    b.kind = Kind::Reflective;
    return b;
  }
  static BoundaryCondition inflow(const PrimitiveState& w, const EosParams& eos) {
    BoundaryCondition b;
    b.kind = Kind::Inflow;
    b.inflow_W = w;
    b.inflow_U = prim_to_cons(w, eos);
    return b;
  }
  static BoundaryCondition moving_shock(const PrimitiveState& wl,
                                        const PrimitiveState& wr, double x0,
                                        double speed, const EosParams& eos) {
    BoundaryCondition b;
    b.kind = Kind::MovingShock;
    b.shock_WL = wl;
    b.shock_WR = wr;
    b.shock_UL = prim_to_cons(wl, eos);
    b.shock_UR = prim_to_cons(wr, eos);
    b.shock_x0 = x0;
    b.shock_speed = speed;
    return b;
  }
};

// exterior state at a boundary point from the interior trace
ConservedState ghost_cons(const ConservedState& u_int, const BoundaryCondition& bc,
                          double nx, double ny, double x, double y, double t);
PrimitiveState ghost_state(const PrimitiveState& w_int, const BoundaryCondition& bc,
                           double nx, double ny, double x, double y, double t);

Vec4 hll_flux(const ConservedState& um, const PrimitiveState& wm,
              const ConservedState& up, const PrimitiveState& wp, double nx, double ny,
              const EosParams& eos);

struct SolverOptions {
  EosParams eos;
  double cfl = 0.5;
  bool limiter_on = true;
  bool axisymmetric = false;
  WenoOptions weno;
  RecoveryAlg recovery = RecoveryAlg::Hybrid;
  double recovery_tol = 1e-15;
  double eps_floor = 1e-13;  // limiter floor; 0 in homogeneity test mode
  int max_halvings = 5;
};

struct StepStats {
  double dt = 0;
  int retries = 0;
  LimiterStats limiter;  // accumulated over the three stages
};

struct AdmissibilityAbort : std::runtime_error {
  AdmissibilityAbort(const std::string& what, int cell_, double time_)
      : std::runtime_error(what), cell(cell_), time(time_) {}
  int cell;
  double time;
};

// captured conservative states for the recovery micro-benchmark
struct RecoveryCapture {
  std::vector<double> data;  // D,m1,m2,E,warm per record
  int stride = 50;           // capture every stride-th step
  bool active_this_step = false;
  void record(const ConservedState& u, double warm) {
    if (!active_this_step) return;
    data.insert(data.end(), {u.D, u.m1, u.m2, u.E, warm});
  }
};

class Solver {
 public:
  Solver(const Reconstruction& rec, std::vector<BoundaryCondition> bc_per_bedge,
         SolverOptions opt);

  // one SSP-RK3 step; means updated in place; dt capped by dt_cap (<=0: none)
  StepStats step(std::vector<Vec4>& means, double t, double dt_cap);

  double compute_dt(const std::vector<Vec4>& means, double t);

  // semi-discrete residual L_K (+ source for axisymmetric runs), for tests;
  // bflux receives the summed boundary-edge fluxes (interior edges cancel)
  void residual(const std::vector<Vec4>& means, double t, std::vector<Vec4>& L,
                std::vector<Vec4>* source = nullptr, Vec4* bflux = nullptr);

  const SolverOptions& options() const { return opt_; }
  SolverOptions& options() { return opt_; }
  RecoveryCapture* capture = nullptr;  // optional

 private:
  struct Stage {
    std::vector<Vec4> ext;       // cell + ghost averages
    std::vector<PolyVec> polys;  // limited reconstruction
    std::vector<Vec4> edge_flux;  // length-weighted Gauss-summed flux per edge
    std::vector<double> edge_sigma;
    std::vector<Vec4> L;
    std::vector<Vec4> source;
    LimiterStats limiter;
  };

  void prepare(const std::vector<Vec4>& means, double t, Stage& s);
  void fill_ghosts(double t, Stage& s);
  void reconstruct_and_limit(double t, Stage& s);
  void edge_fluxes(double t, Stage& s);
  void gather(double t, Stage& s);
  double dt_bound(const Stage& s) const;
  bool advance_means(const std::vector<Vec4>& from, const Stage& s, double dt,
                     double c0, const std::vector<Vec4>& un, double cn,
                     std::vector<Vec4>& out) const;
  PrimitiveState recover_point(const ConservedState& u, const char* where, int cell,
                               double t, int site) const;

  const Reconstruction& rec_;
  const Mesh& mesh_;
  std::vector<BoundaryCondition> bc_;
  SolverOptions opt_;
  Stage s0_, s1_, s2_;
  std::vector<Vec4> u1_, u2_, u3_;
  mutable std::vector<double> warm_;  // per-site Newton warm starts
};

}  // namespace rhd

#endif
