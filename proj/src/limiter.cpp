#include "rhd/limiter.hpp"

#include <cmath>

namespace rhd {

namespace {
constexpr double kOmegaHat1 = 1.0 / 6.0;  // first Gauss-Lobatto weight, L = 3
constexpr double kGaussW = 0.5;
}  // namespace

CellLimiterResult pcp_limit_cell(const Reconstruction& rec, int cell, PolyVec& P,
                                 bool axisymmetric, double eps_floor) {
  const Mesh& m = rec.mesh();
  const Triangle& t = m.tris[cell];
  CellLimiterResult res;

  // decision points: 6 edge Gauss points (+ 3 interior source points)
  double px[9], py[9];
  int npt = 0;
  for (int j = 0; j < 3; ++j)
    for (int q = 0; q < 2; ++q) {
      px[npt] = t.edge[j].gx[q];
      py[npt] = t.edge[j].gy[q];
      ++npt;
    }
  if (axisymmetric) {
    double sx[3], sy[3], sw[3];
    source_quadrature(m, cell, sx, sy, sw);
    for (int q = 0; q < 3; ++q) {
      px[npt] = sx[q];
      py[npt] = sy[q];
      ++npt;
    }
  }

  // fluctuation part at each point (mean-free by the zero-mean basis)
  double fl[9][4];
  for (int i = 0; i < npt; ++i) {
    double psi[5];
    rec.psi_all(cell, px[i], py[i], psi);
    for (int c = 0; c < 4; ++c) {
      double s = 0;
      for (int k = 0; k < 5; ++k) s += P.a[k][c] * psi[k];
      fl[i][c] = s;
    }
  }

  const double Dbar = P.mean[0];
  const double scale = 1.0 / (1.0 - 2.0 * kOmegaHat1);

  // Step 1: density
  double Dmin = Dbar + fl[0][0];
  double gsum = 0;  // weighted Gauss sum over the 6 edge points
  for (int i = 0; i < 6; ++i) {
    Dmin = std::min(Dmin, Dbar + fl[i][0]);
    gsum += kGaussW * fl[i][0];
  }
  const double D1 = Dbar - scale * (2.0 / 3.0) * kOmegaHat1 * gsum;
  Dmin = std::min(Dmin, D1);
  for (int i = 6; i < npt; ++i) Dmin = std::min(Dmin, Dbar + fl[i][0]);

  const double epsD = std::min(eps_floor, Dbar);
  double thD = 1.0;
  if (Dmin < epsD) {
    const double den = Dbar - Dmin;
    thD = den != 0.0 ? std::min(std::fabs((Dbar - epsD) / den), 1.0) : 1.0;
    for (int k = 0; k < 5; ++k) P.a[k][0] *= thD;
    for (int i = 0; i < npt; ++i) fl[i][0] *= thD;
  }

  // Step 2: full vector through g
  const double gbar = g_fn(ConservedState::from(P.mean));
  Vec4 gacc{};
  double gmin = 0;
  for (int i = 0; i < npt; ++i) {
    const ConservedState u = ConservedState::from(
        {P.mean[0] + fl[i][0], P.mean[1] + fl[i][1], P.mean[2] + fl[i][2],
         P.mean[3] + fl[i][3]});
    const double gi = g_fn(u);
    gmin = (i == 0) ? gi : std::min(gmin, gi);
    if (i < 6)
      for (int c = 0; c < 4; ++c) gacc[c] += kGaussW * fl[i][c];
  }
  Vec4 u2 = P.mean;
  for (int c = 0; c < 4; ++c) u2[c] -= scale * (2.0 / 3.0) * kOmegaHat1 * gacc[c];
  gmin = std::min(gmin, g_fn(ConservedState::from(u2)));

  const double epsg = std::min(eps_floor, gbar);
  double thg = 1.0;
  if (gmin < epsg) {
    const double den = gbar - gmin;
    thg = den != 0.0 ? std::min(std::fabs((gbar - epsg) / den), 1.0) : 1.0;
    for (int k = 0; k < 5; ++k)
      for (int c = 0; c < 4; ++c) P.a[k][c] *= thg;
  }

  res.theta_D = thD;
  res.theta_g = thg;
  res.limited = (thD < 1.0) || (thg < 1.0);
  return res;
}

}  // namespace rhd
