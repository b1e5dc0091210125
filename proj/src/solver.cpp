#include "rhd/solver.hpp"

#include <cmath>
#include <limits>

#include "rhd/parallel.hpp"

namespace rhd {

namespace {
constexpr double kOmegaHat1 = 1.0 / 6.0;
constexpr double kCflCoeff = (2.0 / 3.0) * kOmegaHat1;  // 1/9
}  // namespace

ConservedState ghost_cons(const ConservedState& u, const BoundaryCondition& bc,
                          double nx, double ny, double x, double y, double t) {
  switch (bc.kind) {
    case BoundaryCondition::Kind::Outflow: return u;
    case BoundaryCondition::Kind::Reflective: {
      ConservedState g = u;
      const double mn = u.m1 * nx + u.m2 * ny;
      g.m1 -= 2.0 * mn * nx;
      g.m2 -= 2.0 * mn * ny;
      return g;
    }
    case BoundaryCondition::Kind::Inflow: return bc.inflow_U;
    case BoundaryCondition::Kind::MovingShock:
      return x < bc.shock_x0 + bc.shock_speed * t ? bc.shock_UL : bc.shock_UR;
  }
  return u;
}

PrimitiveState ghost_state(const PrimitiveState& w, const BoundaryCondition& bc,
                           double nx, double ny, double x, double y, double t) {
  switch (bc.kind) {
    case BoundaryCondition::Kind::Outflow: return w;
    case BoundaryCondition::Kind::Reflective: {
      PrimitiveState g = w;
      const double vn = w.v1 * nx + w.v2 * ny;
      g.v1 -= 2.0 * vn * nx;
      g.v2 -= 2.0 * vn * ny;
      return g;
    }
    case BoundaryCondition::Kind::Inflow: return bc.inflow_W;
    case BoundaryCondition::Kind::MovingShock:
      return x < bc.shock_x0 + bc.shock_speed * t ? bc.shock_WL : bc.shock_WR;
  }
  return w;
}

Vec4 hll_flux(const ConservedState& um, const PrimitiveState& wm,
              const ConservedState& up, const PrimitiveState& wp, double nx, double ny,
              const EosParams& eos) {
  const auto lm = eigenvalues(wm, nx, ny, eos);
  const auto lp = eigenvalues(wp, nx, ny, eos);
  const double sl = std::min(std::min(lm[0], lp[0]), 0.0);
  const double sr = std::max(std::max(lm[3], lp[3]), 0.0);
  const Vec4 fm = rotated_flux(um, wm, nx, ny);
  if (sr - sl < 1e-14) return fm;  // cannot occur for admissible states
  const Vec4 fp = rotated_flux(up, wp, nx, ny);
  const Vec4 du = up.vec() - um.vec();
  Vec4 out;
  const double inv = 1.0 / (sr - sl);
  for (int c = 0; c < 4; ++c)
    out[c] = (sr * fm[c] - sl * fp[c] + sl * sr * du[c]) * inv;
  return out;
}

Solver::Solver(const Reconstruction& rec, std::vector<BoundaryCondition> bc,
               SolverOptions opt)
    : rec_(rec), mesh_(rec.mesh()), bc_(std::move(bc)), opt_(opt) {
  if ((int)bc_.size() != (int)mesh_.bedges.size())
    throw std::runtime_error("one boundary condition required per boundary edge");
  warm_.assign(mesh_.ncells() + 4 * mesh_.edges.size(), -1.0);
}

PrimitiveState Solver::recover_point(const ConservedState& u, const char* where,
                                     int cell, double t, int site) const {
  const double warm = opt_.recovery == RecoveryAlg::Newton && site >= 0 ? warm_[site] : -1.0;
  if (capture) capture->record(u, warm);
  const RecoveryReport rep = recover(u, opt_.eos, opt_.recovery, opt_.recovery_tol, warm);
  if (!rep.ok)
    throw AdmissibilityAbort(std::string("inadmissible state at ") + where, cell, t);
  if (site >= 0) warm_[site] = rep.W.p;
  return rep.W;
}

void Solver::fill_ghosts(double t, Stage& s) {
  const int nc = mesh_.ncells();
  for (size_t g = 0; g < mesh_.ghosts.size(); ++g) {
    const GhostCell& gc = mesh_.ghosts[g];
    const GlobalEdge& e = mesh_.edges[gc.edge];
    const ConservedState ui = ConservedState::from(s.ext[gc.cell]);
    const ConservedState ug =
        ghost_cons(ui, bc_[g], e.nx, e.ny, gc.cx, gc.cy, t);
    s.ext[nc + g] = ug.vec();
  }
}

void Solver::reconstruct_and_limit(double t, Stage& s) {
  const int nc = mesh_.ncells();
  s.polys.resize(nc);
  std::vector<CellLimiterResult> results(nc);
  parallel_for(nc, [&](int k) {
    const ConservedState ubar = ConservedState::from(s.ext[k]);
    const PrimitiveState wbar = recover_point(ubar, "cell mean", k, t, k);
    s.polys[k] = rec_.weno_characteristic(k, s.ext, wbar, opt_.eos, opt_.weno);
    if (opt_.limiter_on)
      results[k] = pcp_limit_cell(rec_, k, s.polys[k], opt_.axisymmetric, opt_.eps_floor);
  });
  s.limiter = LimiterStats{};
  if (opt_.limiter_on)
    for (int k = 0; k < nc; ++k) s.limiter.merge(results[k]);
}

void Solver::edge_fluxes(double t, Stage& s) {
  const int ne = (int)mesh_.edges.size();
  const int nc = mesh_.ncells();
  s.edge_flux.resize(ne);
  s.edge_sigma.resize(ne);
  parallel_for(ne, [&](int e) {
    const GlobalEdge& ed = mesh_.edges[e];
    Vec4 acc{};
    double sig = 0;
    for (int q = 0; q < 2; ++q) {
      const double x = ed.gx[q], y = ed.gy[q];
      const Vec4 uin = rec_.eval(ed.cl, s.polys[ed.cl], x, y);
      const ConservedState um = ConservedState::from(uin);
      ConservedState up;
      if (ed.boundary())
        up = ghost_cons(um, bc_[ed.ghost], ed.nx, ed.ny, x, y, t);
      else
        up = ConservedState::from(rec_.eval(ed.cr, s.polys[ed.cr], x, y));
      const int site = nc + 4 * e + 2 * q;
      const PrimitiveState wm = recover_point(um, "edge quadrature point", ed.cl, t, site);
      const PrimitiveState wp = recover_point(up, "edge quadrature point",
                                              ed.boundary() ? ed.cl : ed.cr, t, site + 1);
      sig = std::max(sig, std::max(spectral_radius(wm, ed.nx, ed.ny, opt_.eos),
                                   spectral_radius(wp, ed.nx, ed.ny, opt_.eos)));
      acc += hll_flux(um, wm, up, wp, ed.nx, ed.ny, opt_.eos);
    }
    s.edge_flux[e] = (0.5 * ed.len) * acc;
    s.edge_sigma[e] = sig;
  });
}

void Solver::gather(double t, Stage& s) {
  const int nc = mesh_.ncells();
  s.L.resize(nc);
  if (opt_.axisymmetric) s.source.resize(nc);
  parallel_for(nc, [&](int k) {
    const Triangle& tr = mesh_.tris[k];
    Vec4 acc{};
    for (int j = 0; j < 3; ++j) {
      const int e = tr.edge_id[j];
      const double sgn = (mesh_.edges[e].cl == k) ? 1.0 : -1.0;
      for (int c = 0; c < 4; ++c) acc[c] += sgn * s.edge_flux[e][c];
    }
    s.L[k] = (-1.0 / tr.area) * acc;
    if (opt_.axisymmetric) {
      double px[3], py[3], pw[3];
      source_quadrature(mesh_, k, px, py, pw);
      Vec4 src{};
      for (int q = 0; q < 3; ++q) {
        const Vec4 uq = rec_.eval(k, s.polys[k], px[q], py[q]);
        const ConservedState u = ConservedState::from(uq);
        const PrimitiveState w = recover_point(u, "source quadrature point", k, t, k);
        const double r = px[q];
        src[0] -= u.D * w.v1 / r;
        src[1] -= u.m1 * w.v1 / r;
        src[2] -= u.m2 * w.v1 / r;
        src[3] -= u.m1 / r;
      }
      s.source[k] = (1.0 / 3.0) * src;
    }
  });
}

void Solver::prepare(const std::vector<Vec4>& means, double t, Stage& s) {
  const int nc = mesh_.ncells();
  s.ext.resize(mesh_.nextended());
  for (int k = 0; k < nc; ++k) s.ext[k] = means[k];
  fill_ghosts(t, s);
  reconstruct_and_limit(t, s);
  edge_fluxes(t, s);
  gather(t, s);
}

double Solver::dt_bound(const Stage& s) const {
  double bound = std::numeric_limits<double>::infinity();
  if (!opt_.axisymmetric) {
    for (size_t e = 0; e < mesh_.edges.size(); ++e) {
      const GlobalEdge& ed = mesh_.edges[e];
      if (s.edge_sigma[e] <= 0) continue;
      double amin = mesh_.tris[ed.cl].area;
      if (!ed.boundary()) amin = std::min(amin, mesh_.tris[ed.cr].area);
      bound = std::min(bound, kCflCoeff * amin / (s.edge_sigma[e] * ed.len));
    }
    return bound;
  }
  for (int k = 0; k < mesh_.ncells(); ++k) {
    const Triangle& tr = mesh_.tris[k];
    double al = std::numeric_limits<double>::infinity();
    for (int j = 0; j < 3; ++j) {
      const double sig = s.edge_sigma[tr.edge_id[j]];
      if (sig > 0) al = std::min(al, kCflCoeff * tr.area / (sig * tr.edge[j].len));
    }
    // source bound A_s over the source quadrature points with v1 > 0
    double as = std::numeric_limits<double>::infinity();
    double px[3], py[3], pw[3];
    source_quadrature(mesh_, k, px, py, pw);
    for (int q = 0; q < 3; ++q) {
      const Vec4 uq = rec_.eval(k, s.polys[k], px[q], py[q]);
      const ConservedState u = ConservedState::from(uq);
      const RecoveryReport rep = recover(u, opt_.eos, RecoveryAlg::Hybrid, opt_.recovery_tol);
      if (!rep.ok) continue;
      const double r = px[q];
      if (rep.W.v1 > 0 && r > 0) {
        const double g = g_fn(u);
        as = std::min(as, r * g / ((rep.W.p + g) * rep.W.v1));
      }
    }
    double cell_bound = al;
    if (std::isfinite(as)) {
      const double beta = al / (as + al);
      cell_bound = std::min((1.0 - beta) * al, beta * as);
    }
    bound = std::min(bound, cell_bound);
  }
  return bound;
}

bool Solver::advance_means(const std::vector<Vec4>& from, const Stage& s, double dt,
                           double c0, const std::vector<Vec4>& un, double cn,
                           std::vector<Vec4>& out) const {
  const int nc = mesh_.ncells();
  out.resize(nc);
  bool ok = true;
  for (int k = 0; k < nc; ++k) {
    Vec4 v = from[k] + dt * s.L[k];
    if (opt_.axisymmetric) v += dt * s.source[k];
    if (cn != 0.0) v = cn * un[k] + c0 * v;
    out[k] = v;
    if (!is_admissible(ConservedState::from(v))) ok = false;
  }
  return ok;
}

double Solver::compute_dt(const std::vector<Vec4>& means, double t) {
  prepare(means, t, s0_);
  return opt_.cfl * dt_bound(s0_);
}

void Solver::residual(const std::vector<Vec4>& means, double t, std::vector<Vec4>& L,
                      std::vector<Vec4>* source, Vec4* bflux) {
  prepare(means, t, s0_);
  L = s0_.L;
  if (source && opt_.axisymmetric) *source = s0_.source;
  if (bflux) {
    Vec4 acc{};
    for (const int ei : mesh_.bedges) acc += s0_.edge_flux[ei];
    *bflux = acc;
  }
}

StepStats Solver::step(std::vector<Vec4>& means, double t, double dt_cap) {
  StepStats st;
  prepare(means, t, s0_);
  double dt = opt_.cfl * dt_bound(s0_);
  if (dt_cap > 0) dt = std::min(dt, dt_cap);
  if (!(dt > 0) || !std::isfinite(dt))
    throw AdmissibilityAbort("non-positive time step", -1, t);

  for (int attempt = 0;; ++attempt) {
    if (advance_means(means, s0_, dt, 1.0, means, 0.0, u1_)) {
      prepare(u1_, t + dt, s1_);
      if (advance_means(u1_, s1_, dt, 0.25, means, 0.75, u2_)) {
        prepare(u2_, t + 0.5 * dt, s2_);
        if (advance_means(u2_, s2_, dt, 2.0 / 3.0, means, 1.0 / 3.0, u3_)) {
          means.swap(u3_);
          st.dt = dt;
          st.retries = attempt;
          st.limiter = s0_.limiter;
          st.limiter.merge(s1_.limiter);
          st.limiter.merge(s2_.limiter);
          return st;
        }
      }
    }
    if (attempt >= opt_.max_halvings)
      throw AdmissibilityAbort("inadmissible cell mean after repeated step halving", -1,
                               t);
    dt *= 0.5;
  }
}

}  // namespace rhd
