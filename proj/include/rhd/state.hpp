#ifndef RHD_STATE_HPP
#define RHD_STATE_HPP

#include <array>
#include <cmath>
#include <cstddef>

namespace rhd {

using Vec4 = std::array<double, 4>;

inline Vec4 operator+(const Vec4& a, const Vec4& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
inline Vec4 operator-(const Vec4& a, const Vec4& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
inline Vec4 operator*(double s, const Vec4& a) {
  return {s * a[0], s * a[1], s * a[2], s * a[3]};
}
inline Vec4& operator+=(Vec4& a, const Vec4& b) {
  for (int i = 0; i < 4; ++i) a[i] += b[i];
  return a;
}

struct EosParams {
  double gamma = 5.0 / 3.0;  // ratio of specific heats, 1 < gamma <= 2
};

// Primitive vector W = (rho, v1, v2, p).
struct PrimitiveState {
  double rho = 0, v1 = 0, v2 = 0, p = 0;

  double vsq() const { return v1 * v1 + v2 * v2; }
  double lorentz() const { return 1.0 / std::sqrt(1.0 - vsq()); }
};

// Conserved vector U = (D, m1, m2, E).
struct ConservedState {
  double D = 0, m1 = 0, m2 = 0, E = 0;

  Vec4 vec() const { return {D, m1, m2, E}; }
  static ConservedState from(const Vec4& u) { return {u[0], u[1], u[2], u[3]}; }
  double msq() const { return m1 * m1 + m2 * m2; }
};

inline bool in_Gw(const PrimitiveState& w) {
  return w.rho > 0.0 && w.p > 0.0 && w.vsq() < 1.0 && std::isfinite(w.rho) &&
         std::isfinite(w.p) && std::isfinite(w.v1) && std::isfinite(w.v2);
}

// Specific enthalpy H = 1 + e + p/rho for the ideal EOS.
inline double enthalpy(const PrimitiveState& w, const EosParams& eos) {
  return 1.0 + eos.gamma / (eos.gamma - 1.0) * w.p / w.rho;
}

inline ConservedState prim_to_cons(const PrimitiveState& w, const EosParams& eos) {
  const double g = w.lorentz();
  const double rhg2 = w.rho * enthalpy(w, eos) * g * g;
  ConservedState u;
  u.D = w.rho * g;
  u.m1 = rhg2 * w.v1;
  u.m2 = rhg2 * w.v2;
  u.E = rhg2 - w.p;
  return u;
}

// Concave admissibility functional g(U) = E - sqrt(D^2 + |m|^2).
inline double g_fn(const ConservedState& u) {
  return u.E - std::sqrt(u.D * u.D + u.msq());
}

inline bool is_admissible(const ConservedState& u) {
  return u.D > 0.0 && g_fn(u) > 0.0 && std::isfinite(u.D) && std::isfinite(u.m1) &&
         std::isfinite(u.m2) && std::isfinite(u.E);
}

// Flux F_i of the 2D system, evaluated from a matched (U, W) pair.
inline Vec4 flux(const ConservedState& u, const PrimitiveState& w, int dir) {
  if (dir == 1) return {u.D * w.v1, u.m1 * w.v1 + w.p, u.m2 * w.v1, u.m1};
  return {u.D * w.v2, u.m1 * w.v2, u.m2 * w.v2 + w.p, u.m2};
}

// n1*F1 + n2*F2.
inline Vec4 rotated_flux(const ConservedState& u, const PrimitiveState& w,
                         double n1, double n2) {
  const double vn = w.v1 * n1 + w.v2 * n2;
  return {u.D * vn, u.m1 * vn + w.p * n1, u.m2 * vn + w.p * n2,
          u.m1 * n1 + u.m2 * n2};
}

inline double sound_speed(const PrimitiveState& w, const EosParams& eos) {
  return std::sqrt(eos.gamma * w.p / (w.rho * enthalpy(w, eos)));
}

// Extreme eigenvalues of the rotated Jacobian; lam[0] <= v_n = lam[1] = lam[2] <= lam[3].
inline std::array<double, 4> eigenvalues(const PrimitiveState& w, double n1, double n2,
                                         const EosParams& eos) {
  const double cs = sound_speed(w, eos);
  const double cs2 = cs * cs;
  const double vn = w.v1 * n1 + w.v2 * n2;
  const double vsq = w.vsq();
  const double ginv = std::sqrt(1.0 - vsq);
  const double disc = std::sqrt(std::max(0.0, 1.0 - vn * vn - (vsq - vn * vn) * cs2));
  const double den = 1.0 - vsq * cs2;
  const double a = vn * (1.0 - cs2);
  const double b = cs * ginv * disc;
  return {(a - b) / den, vn, vn, (a + b) / den};
}

// Spectral radius of the rotated Jacobian, equals max(|lam1|,|lam4|).
inline double spectral_radius(const PrimitiveState& w, double n1, double n2,
                              const EosParams& eos) {
  const double cs = sound_speed(w, eos);
  const double cs2 = cs * cs;
  const double vn = w.v1 * n1 + w.v2 * n2;
  const double vsq = w.vsq();
  const double ginv = std::sqrt(1.0 - vsq);
  const double disc = std::sqrt(std::max(0.0, 1.0 - vn * vn - (vsq - vn * vn) * cs2));
  return (std::fabs(vn) * (1.0 - cs2) + cs * ginv * disc) / (1.0 - vsq * cs2);
}

}  // namespace rhd

#endif
