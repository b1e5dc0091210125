#include "rhd/reconstruction.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace rhd {

namespace {

constexpr double kGamma0 = 0.96;
constexpr double kGammaL = 0.01;
constexpr double kRankTol = 1e-10;

struct TriVerts {
  double x[3], y[3];
};

TriVerts verts_of(const Mesh& m, int ext) {
  TriVerts tv;
  cell_vertices(m, ext, tv.x, tv.y);
  return tv;
}

}  // namespace

Reconstruction::Reconstruction(const Mesh& mesh) : mesh_(&mesh) {
  const int nc = mesh.ncells();
  fits_.resize(nc);
  for (int k = 0; k < nc; ++k) {
    CellFit& f = fits_[k];
    const Triangle& t = mesh.tris[k];
    f.cx = t.cx;
    f.cy = t.cy;
    f.area = t.area;
    f.inv_area = 1.0 / t.area;
    f.inv_s = 1.0 / std::sqrt(t.area);

    const TriVerts v0 = verts_of(mesh, k);
    auto avg0 = [&](auto&& fn) {
      return triangle_average(v0.x[0], v0.y[0], v0.x[1], v0.y[1], v0.x[2], v0.y[2], fn);
    };
    f.c3 = avg0([&](double x, double y) { return (x - f.cx) * (y - f.cy); });
    f.c4 = avg0([&](double x, double y) { return (x - f.cx) * (x - f.cx); });
    f.c5 = avg0([&](double x, double y) { return (y - f.cy) * (y - f.cy); });
    for (int j = 0; j < 3; ++j) {
      f.qx[j] = t.edge[j].mx - f.cx;
      f.qy[j] = t.edge[j].my - f.cy;
    }

    auto psi_avg = [&](int ext, double out[5]) {
      const TriVerts tv = verts_of(mesh, ext);
      auto avg = [&](auto&& fn) {
        return triangle_average(tv.x[0], tv.y[0], tv.x[1], tv.y[1], tv.x[2], tv.y[2],
                                fn);
      };
      out[0] = avg([&](double x, double y) { return (x - f.cx) * f.inv_s; });
      out[1] = avg([&](double x, double y) { return (y - f.cy) * f.inv_s; });
      out[2] = avg([&](double x, double y) {
        return ((x - f.cx) * (y - f.cy) - f.c3) * f.inv_area;
      });
      out[3] = avg([&](double x, double y) {
        return ((x - f.cx) * (x - f.cx) - f.c4) * f.inv_area;
      });
      out[4] = avg([&](double x, double y) {
        return ((y - f.cy) * (y - f.cy) - f.c5) * f.inv_area;
      });
    };

    const Stencils& st = mesh.stencils[k];
    f.nbig = (int)st.big.size() - 1;
    f.quad_ok = false;
    if (st.quad_ok && f.nbig >= 5) {
      Eigen::MatrixXd M(f.nbig, 5);
      for (int i = 0; i < f.nbig; ++i) {
        double row[5];
        psi_avg(st.big[i + 1], row);
        for (int j = 0; j < 5; ++j) M(i, j) = row[j];
      }
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
      qr.setThreshold(kRankTol);
      if (qr.rank() == 5) {
        const Eigen::MatrixXd pinv =
            qr.solve(Eigen::MatrixXd::Identity(f.nbig, f.nbig));
        for (int j = 0; j < 5; ++j)
          for (int i = 0; i < f.nbig; ++i) f.qpinv[j][i] = pinv(j, i);
        f.quad_ok = true;
      }
    }

    for (int ell = 0; ell < 4; ++ell) {
      LinFit& lf = f.lin[ell];
      lf.ok = false;
      if (!st.has[ell]) continue;
      const auto& members = st.small[ell];
      lf.n = (int)members.size();
      if (lf.n < 2 || lf.n > 3) continue;
      Eigen::MatrixXd M(lf.n, 2);
      for (int i = 0; i < lf.n; ++i) {
        double row[5];
        psi_avg(members[i], row);
        M(i, 0) = row[0];
        M(i, 1) = row[1];
        // member position within big (K0 at 0)
        lf.slot[i] = 0;
        for (int s = 1; s < (int)st.big.size(); ++s)
          if (st.big[s] == members[i]) {
            lf.slot[i] = s;
            break;
          }
      }
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
      qr.setThreshold(kRankTol);
      if (qr.rank() == 2) {
        const Eigen::MatrixXd pinv = qr.solve(Eigen::MatrixXd::Identity(lf.n, lf.n));
        for (int j = 0; j < 2; ++j)
          for (int i = 0; i < lf.n; ++i) lf.pinv[j][i] = pinv(j, i);
        lf.ok = true;
      }
    }
  }
}

void Reconstruction::psi_all(int cell, double x, double y, double out[5]) const {
  const CellFit& f = fits_[cell];
  const double dx = x - f.cx, dy = y - f.cy;
  out[0] = dx * f.inv_s;
  out[1] = dy * f.inv_s;
  out[2] = (dx * dy - f.c3) * f.inv_area;
  out[3] = (dx * dx - f.c4) * f.inv_area;
  out[4] = (dy * dy - f.c5) * f.inv_area;
}

double Reconstruction::eval(int cell, const QuadPoly& p, double x, double y) const {
  double psi[5];
  psi_all(cell, x, y, psi);
  double v = p.mean;
  for (int j = 0; j < 5; ++j) v += p.a[j] * psi[j];
  return v;
}

Vec4 Reconstruction::eval(int cell, const PolyVec& p, double x, double y) const {
  double psi[5];
  psi_all(cell, x, y, psi);
  Vec4 v = p.mean;
  for (int j = 0; j < 5; ++j)
    for (int c = 0; c < 4; ++c) v[c] += p.a[j][c] * psi[j];
  return v;
}

bool Reconstruction::fit_quadratic(int cell, const double* slots, QuadPoly& out) const {
  const CellFit& f = fits_[cell];
  out.mean = slots[0];
  for (int j = 0; j < 5; ++j) out.a[j] = 0;
  if (!f.quad_ok) return false;
  for (int i = 0; i < f.nbig; ++i) {
    const double r = slots[i + 1] - slots[0];
    for (int j = 0; j < 5; ++j) out.a[j] += f.qpinv[j][i] * r;
  }
  return true;
}

bool Reconstruction::fit_linear(int cell, const double* slots, int ell,
                                LinPoly& out) const {
  const CellFit& f = fits_[cell];
  const LinFit& lf = f.lin[ell];
  out.mean = slots[0];
  out.b[0] = out.b[1] = 0;
  if (!lf.ok) return false;
  for (int i = 0; i < lf.n; ++i) {
    const double r = slots[lf.slot[i]] - slots[0];
    out.b[0] += lf.pinv[0][i] * r;
    out.b[1] += lf.pinv[1][i] * r;
  }
  return true;
}

void Reconstruction::smoothness_indicators(int cell, const QuadPoly& quad,
                                           const LinPoly lin[4], double beta[5]) const {
  const CellFit& f = fits_[cell];
  // first derivatives of phi2 are linear; integrate their squares with the
  // midpoint rule (exact), then add the constant second-derivative part
  double acc = 0;
  for (int q = 0; q < 3; ++q) {
    const double px = quad.a[0] * f.inv_s +
                      (quad.a[2] * f.qy[q] + 2.0 * quad.a[3] * f.qx[q]) * f.inv_area;
    const double py = quad.a[1] * f.inv_s +
                      (quad.a[2] * f.qx[q] + 2.0 * quad.a[4] * f.qy[q]) * f.inv_area;
    acc += px * px + py * py;
  }
  beta[0] = f.area * acc / 3.0 + quad.a[2] * quad.a[2] +
            4.0 * (quad.a[3] * quad.a[3] + quad.a[4] * quad.a[4]);
  for (int ell = 0; ell < 4; ++ell)
    beta[ell + 1] = lin[ell].b[0] * lin[ell].b[0] + lin[ell].b[1] * lin[ell].b[1];
}

WenoWeights Reconstruction::nonlinear_weights(int cell, const double beta[5],
                                              const bool present[5],
                                              const double* slots,
                                              const WenoOptions& opt) const {
  const CellFit& f = fits_[cell];
  WenoWeights w{};
  double gsum = 0;
  for (int i = 0; i < 5; ++i) {
    w.present[i] = present[i];
    w.beta[i] = beta[i];
    if (present[i]) gsum += (i == 0 ? kGamma0 : kGammaL);
  }
  for (int i = 0; i < 5; ++i)
    w.gamma[i] = present[i] ? (i == 0 ? kGamma0 : kGammaL) / gsum : 0.0;

  int nlin = 0;
  double tau = 0;
  for (int ell = 1; ell < 5; ++ell)
    if (present[ell]) {
      tau += std::fabs(beta[0] - beta[ell]);
      ++nlin;
    }
  w.tau = nlin > 0 ? tau / nlin : 0.0;

  double umax = 0;
  const int nbig = f.nbig + 1;
  for (int i = 0; i < nbig; ++i) umax = std::max(umax, std::fabs(slots[i]));
  w.epsilon = f.area * umax * umax;

  if (opt.force_linear || w.epsilon == 0.0) {
    for (int i = 0; i < 5; ++i) w.varpi[i] = w.gamma[i];
    return w;
  }

  double dsum = 0;
  double d[5];
  for (int i = 0; i < 5; ++i) {
    if (!present[i]) {
      d[i] = 0;
      continue;
    }
    const double be = beta[i] + w.epsilon;
    const double ratio = opt.scaling_invariant ? (w.tau * w.tau) / (be * be)
                                               : (w.tau * w.tau) / be;
    d[i] = w.gamma[i] * (1.0 + ratio);
    dsum += d[i];
  }
  for (int i = 0; i < 5; ++i) w.varpi[i] = present[i] ? d[i] / dsum : 0.0;
  return w;
}

QuadPoly Reconstruction::weno_scalar(int cell, const double* slots,
                                     const WenoOptions& opt, WenoWeights* rec) const {
  const CellFit& f = fits_[cell];
  QuadPoly quad;
  LinPoly lin[4];
  bool present[5];
  present[0] = fit_quadratic(cell, slots, quad);
  for (int ell = 0; ell < 4; ++ell) present[ell + 1] = fit_linear(cell, slots, ell, lin[ell]);

  QuadPoly out;
  out.mean = slots[0];
  if (!present[0]) {
    // near-boundary fallback: central linear candidate only
    if (present[1]) {
      out.a[0] = lin[0].b[0];
      out.a[1] = lin[0].b[1];
    }
    if (rec) *rec = WenoWeights{};
    return out;
  }

  double beta[5];
  smoothness_indicators(cell, quad, lin, beta);
  const WenoWeights w = nonlinear_weights(cell, beta, present, slots, opt);
  if (rec) *rec = w;

  const double w0g0 = w.varpi[0] / w.gamma[0];
  for (int j = 0; j < 5; ++j) out.a[j] = w0g0 * quad.a[j];
  for (int ell = 1; ell < 5; ++ell) {
    if (!w.present[ell]) continue;
    const double c = w.varpi[ell] - w0g0 * w.gamma[ell];
    out.a[0] += c * lin[ell - 1].b[0];
    out.a[1] += c * lin[ell - 1].b[1];
  }
  return out;
}

PolyVec Reconstruction::weno_characteristic(int cell, const std::vector<Vec4>& avg,
                                            const PrimitiveState& wbar,
                                            const EosParams& eos,
                                            const WenoOptions& opt) const {
  const Mesh& m = *mesh_;
  const Stencils& st = m.stencils[cell];
  const Triangle& t = m.tris[cell];
  const int nbig = (int)st.big.size();

  PolyVec out;
  out.mean = avg[cell];

  double wsum = 0;
  double acc[5][4] = {};
  double zslots[10][4];
  double s[10];
  for (int j = 0; j < 3; ++j) {
    const EigenSystem es = eigensystem(wbar, t.edge[j].nx, t.edge[j].ny, eos);
    for (int i = 0; i < nbig; ++i) {
      const Vec4 z = es.to_characteristic(avg[st.big[i]]);
      for (int c = 0; c < 4; ++c) zslots[i][c] = z[c];
    }
    double az[4][5];
    for (int c = 0; c < 4; ++c) {
      for (int i = 0; i < nbig; ++i) s[i] = zslots[i][c];
      const QuadPoly p = weno_scalar(cell, s, opt);
      for (int k = 0; k < 5; ++k) az[c][k] = p.a[k];
    }
    const double wj = m.cell_area(t.nb[j]);
    for (int k = 0; k < 5; ++k) {
      const Vec4 ak = es.to_conserved({az[0][k], az[1][k], az[2][k], az[3][k]});
      for (int c = 0; c < 4; ++c) acc[k][c] += wj * ak[c];
    }
    wsum += wj;
  }
  for (int k = 0; k < 5; ++k)
    for (int c = 0; c < 4; ++c) out.a[k][c] = acc[k][c] / wsum;
  return out;
}

}  // namespace rhd
