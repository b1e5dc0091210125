#include "rhd/problems.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "rhd/recovery.hpp"

namespace rhd {

PrimitiveState vortex_state(double x, double y, const VortexParams& vp) {
  const double G = vp.gamma;
  const double w2 = vp.ux * vp.ux + vp.uy * vp.uy;
  const double gam = 1.0 / std::sqrt(1.0 - w2);

  // rest-frame coordinates at t = 0 (length contraction along the boost)
  double x0 = x, y0 = y;
  if (w2 > 0) {
    const double proj = (vp.ux * x + vp.uy * y) / w2;
    x0 = x + (gam - 1.0) * proj * vp.ux;
    y0 = y + (gam - 1.0) * proj * vp.uy;
  }
  const double r2 = x0 * x0 + y0 * y0;

  const double alpha = (G - 1.0) / G / (8.0 * M_PI * M_PI) * vp.eps * vp.eps;
  const double q = alpha * std::exp(1.0 - r2);
  if (q >= 1.0) throw std::runtime_error("vortex parameters produce vacuum");

  PrimitiveState s;
  s.rho = std::pow(1.0 - q, 1.0 / (G - 1.0));
  s.p = std::pow(s.rho, G);

  const double beta = 2.0 * G * q / (2.0 * G - 1.0 - G * q);
  const double f = std::sqrt(beta / (1.0 + beta * r2));
  const double v0x = -y0 * f, v0y = x0 * f;

  if (w2 == 0) {
    s.v1 = v0x;
    s.v2 = v0y;
    return s;
  }
  // relativistic velocity composition with the boost u
  const double udotv = vp.ux * v0x + vp.uy * v0y;
  const double par = udotv / w2;  // component of v0 along u, divided by |u|^2
  const double den = 1.0 + udotv;
  s.v1 = (vp.ux + par * vp.ux + (v0x - par * vp.ux) / gam) / den;
  s.v2 = (vp.uy + par * vp.uy + (v0y - par * vp.uy) / gam) / den;
  return s;
}

PrimitiveState vortex_exact(double x, double y, double t, const VortexParams& vp) {
  return vortex_state(x - vp.ux * t, y - vp.uy * t, vp);
}

namespace {

constexpr double kTol = 1e-9;

ProblemSpec make_vortex(const std::string& name, double eps) {
  ProblemSpec p;
  p.name = name;
  p.eos.gamma = 1.4;
  p.tmax = 0.15;
  p.default_mesh = "grid:x0=-5,x1=5,y0=-5,y1=5,nx=46,ny=46,jitter=0.25,seed=3";
  const double w = 0.5 * std::sqrt(2.0);
  VortexParams vp{eps, -w / std::sqrt(2.0), -w / std::sqrt(2.0), 1.4};
  p.init = [vp](double x, double y) { return vortex_state(x, y, vp); };
  p.exact = [vp](double x, double y, double t) { return vortex_exact(x, y, t, vp); };
  p.bc = [](const GlobalEdge&) { return BoundaryCondition::outflow(); };
  return p;
}

ProblemSpec make_quasi1d(const std::string& name, double tmax,
                         std::function<PrimitiveState(double)> profile,
                         const std::string& mesh) {
  ProblemSpec p;
  p.name = name;
  p.eos.gamma = 5.0 / 3.0;
  p.tmax = tmax;
  p.default_mesh = mesh;
  p.init = [profile](double x, double) { return profile(x); };
  p.bc = [](const GlobalEdge&) { return BoundaryCondition::outflow(); };
  return p;
}

ProblemSpec make_riemann2d(const std::string& name,
                           std::function<PrimitiveState(double, double)> init) {
  ProblemSpec p;
  p.name = name;
  p.eos.gamma = 5.0 / 3.0;
  p.tmax = 0.4;
  p.default_mesh = "grid:x0=0,x1=1,y0=0,y1=1,nx=100,ny=100";
  p.init = std::move(init);
  p.bc = [](const GlobalEdge&) { return BoundaryCondition::outflow(); };
  return p;
}

// inflow pressure from a Newtonian Mach number M = v/cs
double pressure_from_mach(double rho, double v, double mach, double G) {
  const double cs2 = (v / mach) * (v / mach);
  return cs2 * rho * (G - 1.0) / (G * (G - 1.0 - cs2));
}

std::map<std::string, ProblemSpec> build_library() {
  std::map<std::string, ProblemSpec> lib;

  lib["vortex"] = make_vortex("vortex", 5.0);
  lib["vortex_strong"] = make_vortex("vortex_strong", 10.0828);

  lib["riemann1"] = make_quasi1d(
      "riemann1", 0.4,
      [](double x) {
        return x < 0.5 ? PrimitiveState{1.0, -0.6, 0, 10.0}
                       : PrimitiveState{10.0, 0.5, 0, 20.0};
      },
      "grid:x0=0,x1=1,y0=-0.01,y1=0.01,nx=100,ny=2");

  lib["riemann2"] = make_quasi1d(
      "riemann2", 0.45,
      [](double x) {
        return x < 0.5 ? PrimitiveState{1.0, 0, 0, 1e4}
                       : PrimitiveState{1.0, 0, 0, 1e-8};
      },
      "grid:x0=0,x1=1,y0=-0.01,y1=0.01,nx=100,ny=2");

  lib["riemann3"] = make_quasi1d(
      "riemann3", 0.45,
      [](double x) {
        return x < 0.5 ? PrimitiveState{100.0, 0, 0, 1e4}
                       : PrimitiveState{100.0, 0, 0, 1e2};
      },
      "grid:x0=0,x1=1,y0=-0.01,y1=0.01,nx=100,ny=2");

  lib["multiscale"] = make_quasi1d(
      "multiscale", 0.45,
      [](double x) {
        if (x < 0.5) return PrimitiveState{100.0, 0, 0, 1e4};
        if (x < 1.0) return PrimitiveState{100.0, 0, 0, 100.0};
        if (x < 1.5) return PrimitiveState{1.0, 0, 0, 100.0};
        return PrimitiveState{1.0, 0, 0, 1.0};
      },
      "grid:x0=0,x1=2,y0=-0.01,y1=0.01,nx=200,ny=2");

  lib["riemann2d1"] = make_riemann2d("riemann2d1", [](double x, double y) {
    if (x > 0.5 && y > 0.5) return PrimitiveState{0.1, 0, 0, 0.01};
    if (x < 0.5 && y > 0.5) return PrimitiveState{0.1, 0.99, 0, 1.0};
    if (x < 0.5 && y < 0.5) return PrimitiveState{0.5, 0, 0, 1.0};
    return PrimitiveState{0.1, 0, 0.99, 1.0};
  });

  lib["riemann2d2"] = make_riemann2d("riemann2d2", [](double x, double y) {
    if (x > 0.5 && y > 0.5) return PrimitiveState{0.1, 0, 0, 20.0};
    if (x < 0.5 && y > 0.5)
      return PrimitiveState{0.00414329639576, 0.9946418833556542, 0, 0.05};
    if (x < 0.5 && y < 0.5) return PrimitiveState{0.01, 0, 0, 0.05};
    return PrimitiveState{0.00414329639576, 0, 0.9946418833556542, 0.05};
  });

  {
    ProblemSpec p;
    p.name = "doublemach";
    p.eos.gamma = 1.4;
    p.tmax = 4.0;
    p.default_mesh = "wedge:h=0.05,ytop=2.2";
    const PrimitiveState wl{8.564, 0.4247, -0.4247, 0.3808};
    const PrimitiveState wr{1.4, 0, 0, 0.0025};
    const double speed = 0.4984;
    p.init = [wl, wr](double x, double) { return x < 0.0 ? wl : wr; };
    const EosParams eos = p.eos;
    p.bc = [wl, wr, speed, eos](const GlobalEdge& e) {
      const double ytop = 2.2;
      if (std::fabs(e.mx + 0.1) < kTol) return BoundaryCondition::inflow(wl, eos);
      if (std::fabs(e.mx - 2.7) < kTol) return BoundaryCondition::inflow(wr, eos);
      if (std::fabs(e.my - ytop) < kTol)
        return BoundaryCondition::moving_shock(wl, wr, 0.0, speed, eos);
      if (std::fabs(e.my) < kTol) return BoundaryCondition::inflow(wl, eos);
      return BoundaryCondition::reflective();  // the wedge surface
    };
    lib["doublemach"] = p;
  }

  for (const auto& [suffix, v1] : std::map<std::string, double>{
           {"", 0.999}, {"_v09", 0.9}, {"_v099", 0.99}}) {
    ProblemSpec p;
    p.name = "step" + suffix;
    p.eos.gamma = 1.4;
    p.tmax = v1 == 0.9 ? 6.0 : (v1 == 0.99 ? 4.45 : 4.0);
    p.default_mesh = "blocks:h=0.05;0,0.6,0,1;0.6,3,0.2,1";
    const double pr = pressure_from_mach(1.4, v1, 3.0, 1.4);
    const PrimitiveState win{1.4, v1, 0, pr};
    p.init = [win](double, double) { return win; };
    const EosParams eos = p.eos;
    p.bc = [win, eos](const GlobalEdge& e) {
      if (std::fabs(e.mx) < kTol) return BoundaryCondition::inflow(win, eos);
      if (std::fabs(e.mx - 3.0) < kTol) return BoundaryCondition::outflow();
      return BoundaryCondition::reflective();  // tunnel walls and the step
    };
    lib[p.name] = p;
  }

  for (const auto& [suffix, eps] : std::map<std::string, double>{
           {"", 5.0}, {"_strong", 10.0828}}) {
    ProblemSpec p;
    p.name = "shockvortex" + suffix;
    p.eos.gamma = 1.4;
    p.tmax = 19.0;
    p.default_mesh = "grid:x0=-17,x1=3,y0=-5,y1=5,nx=160,ny=80";
    VortexParams vp{eps, -0.9, 0.0, 1.4};
    const PrimitiveState post{4.891497310766981, -0.388882958251919, 0,
                              11.894863258311670};
    const PrimitiveState pre{1.0, -0.9, 0, 1.0};
    p.init = [vp, post](double x, double y) {
      return x < -6.0 ? post : vortex_state(x, y, vp);
    };
    const EosParams eos = p.eos;
    p.bc = [pre, eos](const GlobalEdge& e) {
      if (std::fabs(e.mx + 17.0) < kTol) return BoundaryCondition::outflow();
      if (std::fabs(e.mx - 3.0) < kTol) return BoundaryCondition::inflow(pre, eos);
      return BoundaryCondition::reflective();  // y = +-5
    };
    lib[p.name] = p;
  }

  {
    ProblemSpec p;
    p.name = "diffraction";
    p.eos.gamma = 1.4;
    p.tmax = 8.0;
    p.default_mesh = "blocks:h=0.2;0,3.4,6,11;3.4,13,0,11";
    const PrimitiveState post{2.58962919872684, 0.40445979062926, 0,
                              2.865544850466692};
    const PrimitiveState pre{1.4, 0, 0, 1.0};
    p.init = [post, pre](double x, double) { return x < 3.4 ? post : pre; };
    const EosParams eos = p.eos;
    p.bc = [post, eos](const GlobalEdge& e) {
      if (std::fabs(e.mx) < kTol) return BoundaryCondition::inflow(post, eos);
      if (std::fabs(e.mx - 13.0) < kTol || std::fabs(e.my - 11.0) < kTol ||
          std::fabs(e.my) < kTol)
        return BoundaryCondition::outflow();
      return BoundaryCondition::reflective();  // corner walls
    };
    lib["diffraction"] = p;
  }

  {
    // axisymmetric jet in (r, z); v1 is the radial velocity
    ProblemSpec p;
    p.name = "jet";
    p.eos.gamma = 5.0 / 3.0;
    p.tmax = 100.0;
    p.axisymmetric = true;
    p.default_mesh = "grid:x0=0,x1=15,y0=0,y1=45,nx=45,ny=135";
    const double pa = 1.70305e-4;
    const PrimitiveState ambient{1.0, 0, 0, pa};
    const PrimitiveState beam{0.01, 0, 0.99, pa};
    p.init = [ambient](double, double) { return ambient; };
    const EosParams eos = p.eos;
    p.bc = [beam, eos](const GlobalEdge& e) {
      if (std::fabs(e.mx) < kTol) return BoundaryCondition::reflective();  // axis r=0
      if (std::fabs(e.my) < kTol && e.mx <= 1.0)
        return BoundaryCondition::inflow(beam, eos);
      return BoundaryCondition::outflow();
    };
    lib["jet"] = p;
  }

  return lib;
}

const std::map<std::string, ProblemSpec>& library() {
  static const std::map<std::string, ProblemSpec> lib = build_library();
  return lib;
}

}  // namespace

const ProblemSpec& find_problem(const std::string& name) {
  const auto& lib = library();
  auto it = lib.find(name);
  if (it == lib.end()) throw std::runtime_error("unknown problem: " + name);
  return it->second;
}

std::vector<std::string> problem_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : library()) names.push_back(k);
  return names;
}

std::vector<Vec4> project_initial(const Mesh& mesh, const ProblemSpec& prob,
                                  double scale) {
  std::vector<Vec4> means(mesh.ncells());
  for (int k = 0; k < mesh.ncells(); ++k) {
    double px[3], py[3], pw[3];
    interior_quadrature(mesh, k, px, py, pw);
    Vec4 acc{};
    for (int q = 0; q < 3; ++q) {
      PrimitiveState w = prob.init(px[q], py[q]);
      w.rho *= scale;
      w.p *= scale;
      if (!in_Gw(w))
        throw std::runtime_error("initial condition leaves G_w at a quadrature point");
      const ConservedState u = prim_to_cons(w, prob.eos);
      acc += (pw[q] / mesh.tris[k].area) * u.vec();
    }
    if (!is_admissible(ConservedState::from(acc)))
      throw std::runtime_error("projected initial mean is inadmissible");
    means[k] = acc;
  }
  return means;
}

std::vector<BoundaryCondition> boundary_conditions(const Mesh& mesh,
                                                   const ProblemSpec& prob,
                                                   double scale) {
  std::vector<BoundaryCondition> bcs;
  bcs.reserve(mesh.bedges.size());
  for (const int ei : mesh.bedges) {
    BoundaryCondition bc = prob.bc(mesh.edges[ei]);
    if (scale != 1.0) {
      auto rescale = [&](PrimitiveState& w, ConservedState& u) {
        w.rho *= scale;
        w.p *= scale;
        u = prim_to_cons(w, prob.eos);
      };
      if (bc.kind == BoundaryCondition::Kind::Inflow) rescale(bc.inflow_W, bc.inflow_U);
      if (bc.kind == BoundaryCondition::Kind::MovingShock) {
        rescale(bc.shock_WL, bc.shock_UL);
        rescale(bc.shock_WR, bc.shock_UR);
      }
    }
    bcs.push_back(bc);
  }
  return bcs;
}

ErrorNorms density_error(const Mesh& mesh, const std::vector<Vec4>& means,
                         const EosParams& eos,
                         const std::function<PrimitiveState(double, double)>& exact) {
  ErrorNorms en;
  double area = 0;
  for (int k = 0; k < mesh.ncells(); ++k) {
    const RecoveryReport rep = recover_hybrid(ConservedState::from(means[k]), eos);
    double px[3], py[3], pw[3];
    interior_quadrature(mesh, k, px, py, pw);
    double rho_ex = 0;
    for (int q = 0; q < 3; ++q) rho_ex += pw[q] * exact(px[q], py[q]).rho;
    rho_ex /= mesh.tris[k].area;
    const double d = std::fabs(rep.W.rho - rho_ex);
    const double a = mesh.tris[k].area;
    en.l1 += a * d;
    en.l2 += a * d * d;
    area += a;
  }
  en.l1 /= area;
  en.l2 = std::sqrt(en.l2 / area);
  return en;
}

}  // namespace rhd
