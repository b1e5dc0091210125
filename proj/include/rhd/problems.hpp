#ifndef RHD_PROBLEMS_HPP
#define RHD_PROBLEMS_HPP

#include <functional>
#include <string>
#include <vector>

#include "rhd/mesh.hpp"
#include "rhd/solver.hpp"

namespace rhd {

// Boosted isentropic vortex. u = (ux, uy) is the boost velocity with |u| = w;
// the exact solution is the initial profile advected by u.
struct VortexParams {
  double eps = 5.0;
  double ux = 0, uy = 0;
  double gamma = 1.4;
};

PrimitiveState vortex_state(double x, double y, const VortexParams& vp);
PrimitiveState vortex_exact(double x, double y, double t, const VortexParams& vp);

struct ProblemSpec {
  std::string name;
  EosParams eos;
  double tmax = 1.0;
  bool axisymmetric = false;
  std::string default_mesh;
  std::function<PrimitiveState(double, double)> init;
  std::function<BoundaryCondition(const GlobalEdge&)> bc;
  std::function<PrimitiveState(double, double, double)> exact;  // null if unknown
};

const ProblemSpec& find_problem(const std::string& name);
std::vector<std::string> problem_names();

// cell means of prim_to_cons(init) by the degree-2 interior rule; scale
// multiplies density and pressure (kept at 1 except in scaling studies)
std::vector<Vec4> project_initial(const Mesh& mesh, const ProblemSpec& prob,
                                  double scale = 1.0);

std::vector<BoundaryCondition> boundary_conditions(const Mesh& mesh,
                                                   const ProblemSpec& prob,
                                                   double scale = 1.0);

struct ErrorNorms {
  double l1 = 0, l2 = 0;
};
ErrorNorms density_error(const Mesh& mesh, const std::vector<Vec4>& means,
                         const EosParams& eos,
                         const std::function<PrimitiveState(double, double)>& exact);

}  // namespace rhd

#endif
