#ifndef RHD_EIGENSYSTEM_HPP
#define RHD_EIGENSYSTEM_HPP

#include <cassert>
#include <cmath>

#include "rhd/state.hpp"

namespace rhd {

// Eigendecomposition of the rotated Jacobian A_n = n1 dF1/dU + n2 dF2/dU,
// evaluated from the primitive state. R holds right eigenvectors as columns,
// Rinv the left eigenvectors as rows, lam the eigenvalues in ascending order.
struct EigenSystem {
  std::array<double, 4> lam;
  double R[4][4];
  double Rinv[4][4];

  Vec4 to_characteristic(const Vec4& u) const {
    Vec4 z{};
    for (int i = 0; i < 4; ++i)
      z[i] = Rinv[i][0] * u[0] + Rinv[i][1] * u[1] + Rinv[i][2] * u[2] + Rinv[i][3] * u[3];
    return z;
  }
  Vec4 to_conserved(const Vec4& z) const {
    Vec4 u{};
    for (int i = 0; i < 4; ++i)
      u[i] = R[i][0] * z[0] + R[i][1] * z[1] + R[i][2] * z[2] + R[i][3] * z[3];
    return u;
  }
};

inline EigenSystem eigensystem(const PrimitiveState& w, double n1, double n2,
                               const EosParams& eos) {
  EigenSystem es;
  es.lam = eigenvalues(w, n1, n2, eos);
  const double l1 = es.lam[0], l4 = es.lam[3];

  const double vn = w.v1 * n1 + w.v2 * n2;
  const double vt = w.v2 * n1 - w.v1 * n2;
  const double g = w.lorentz();
  const double g2 = g * g;
  const double H = enthalpy(w, eos);
  const double cs2 = eos.gamma * w.p / (w.rho * H);
  const double rho_eta = 1.0 / (eos.gamma - 1.0);  // rho * de/dp
  const double eta = rho_eta / w.rho;

  assert(std::fabs(1.0 - vn * vn) > 1e-14);
  assert(std::fabs(vn * vn + vt * vt * cs2 - 1.0) > 1e-14);
  assert(l4 - l1 > 1e-12);

  // right eigenvectors (columns), Proposition A.1 closed forms
  const double col1[4] = {g * (vn * l1 - 1.0),
                          H * g2 * (l1 * (vn * w.v1 - n1) + vt * n2),
                          H * g2 * (l1 * (vn * w.v2 - n2) - vt * n1),
                          H * g2 * (vn * vn - 1.0)};
  const double col2[4] = {1.0, g * w.v1, g * w.v2, g};
  const double col3[4] = {g * vt, 2.0 * H * g2 * vt * w.v1 - H * n2,
                          2.0 * H * g2 * vt * w.v2 + H * n1, 2.0 * H * g2 * vt};
  const double col4[4] = {g * (vn * l4 - 1.0),
                          H * g2 * (l4 * (vn * w.v1 - n1) + vt * n2),
                          H * g2 * (l4 * (vn * w.v2 - n2) - vt * n1),
                          H * g2 * (vn * vn - 1.0)};
  for (int i = 0; i < 4; ++i) {
    es.R[i][0] = col1[i];
    es.R[i][1] = col2[i];
    es.R[i][2] = col3[i];
    es.R[i][3] = col4[i];
  }

  const double vsq = w.vsq();
  const double A = 1.0 + cs2 * rho_eta;
  const double B = 1.0 + rho_eta;
  const double one_m_vn2 = 1.0 - vn * vn;

  // rows 2 and 3
  es.Rinv[1][0] = 1.0 / (w.rho * cs2 * eta);
  es.Rinv[1][1] = vn * (1.0 + vt * vt * g2) / (one_m_vn2 * g * w.rho * H * cs2 * eta) * n1 -
                  vt * g / (w.rho * H * cs2 * eta) * n2;
  es.Rinv[1][2] = vn * (1.0 + vt * vt * g2) / (one_m_vn2 * g * w.rho * H * cs2 * eta) * n2 +
                  vt * g / (w.rho * H * cs2 * eta) * n1;
  es.Rinv[1][3] = (1.0 + vt * vt * g2) / ((vn * vn - 1.0) * g * w.rho * H * cs2 * eta);

  es.Rinv[2][0] = 0.0;
  es.Rinv[2][1] = (-n2 + vn * w.v2) / (H * one_m_vn2);
  es.Rinv[2][2] = (n1 - vn * w.v1) / (H * one_m_vn2);
  es.Rinv[2][3] = vt / (H * (vn * vn - 1.0));

  // rows 1 and 4
  const double lz[2] = {l1, l4};
  for (int k = 0; k < 2; ++k) {
    const double l = lz[k];
    const double dvl = vn - l;
    const double fz = A / (2.0 * rho_eta * H * dvl * dvl * g2 * (vn * vn + vt * vt * cs2 - 1.0));
    const int row = (k == 0) ? 0 : 3;
    es.Rinv[row][0] = fz * (vn * l - 1.0) / (g * A);
    es.Rinv[row][1] = fz * (l * ((vsq + rho_eta) / A * n1 - vt * w.v2) - B / A * vn * n1 + vt * n2);
    es.Rinv[row][2] = fz * (l * ((vsq + rho_eta) / A * n2 + vt * w.v1) - B / A * vn * n2 - vt * n1);
    es.Rinv[row][3] = fz * (vt * vt + 1.0 / (g2 * A) - vn * (l - vn) * B / A);
  }

  return es;
}

}  // namespace rhd

#endif
