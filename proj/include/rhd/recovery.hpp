#ifndef RHD_RECOVERY_HPP
#define RHD_RECOVERY_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "rhd/state.hpp"

namespace rhd {

enum class RecoveryAlg { Bisection, FixedPoint, Hybrid, Newton };

struct RecoveryReport {
  PrimitiveState W;
  int iterations = 0;
  double residual = 0.0;  // |Phi| at exit
  RecoveryAlg algorithm = RecoveryAlg::Hybrid;
  bool ok = false;
  bool hit_cap = false;
};

// Phi_U(p) = p/(G-1) - E + |m|^2/(E+p) + D sqrt(1 - |m|^2/(E+p)^2).
// Strictly increasing on [0,inf) with Phi(0) < 0 for admissible U.
inline double phi(const ConservedState& u, double p, const EosParams& eos) {
  const double ep = u.E + p;
  const double msq = u.msq();
  const double t = std::sqrt(msq) / ep;
  return p / (eos.gamma - 1.0) - u.E + msq / ep +
         u.D * std::sqrt((1.0 - t) * (1.0 + t));
}

inline double phi_prime(const ConservedState& u, double p, const EosParams& eos) {
  const double ep = u.E + p;
  const double msq = u.msq();
  const double t = std::sqrt(msq) / ep;
  const double root = ep * std::sqrt((1.0 - t) * (1.0 + t));  // sqrt((E+p)^2-|m|^2)
  return 1.0 / (eos.gamma - 1.0) - msq / (ep * ep) * (1.0 - u.D / root);
}

// p_R^(0) = (G-1)(E - D sqrt(1 - |m|^2/E^2)); the root lies in (0, p_R^(0)].
inline double pressure_upper_bound(const ConservedState& u, const EosParams& eos) {
  const double t = std::sqrt(u.msq()) / u.E;
  return (eos.gamma - 1.0) * (u.E - u.D * std::sqrt((1.0 - t) * (1.0 + t)));
}

// velocity and density from the converged pressure, Eq. v = m/(E+p), rho = D sqrt(1-|v|^2)
inline PrimitiveState primitives_from_pressure(const ConservedState& u, double p) {
  PrimitiveState w;
  w.v1 = u.m1 / (u.E + p);
  w.v2 = u.m2 / (u.E + p);
  w.rho = u.D * std::sqrt(std::max(0.0, 1.0 - w.vsq()));
  w.p = p;
  return w;
}

namespace detail {
// Exit when |Phi| <= tol*E (the residual scale is set by E) or the bracket/step
// falls below 4 ulp of the current pressure.
inline double scaled_tol(double tol, double E) { return tol * E; }
constexpr double kStepEps = 4.0 * std::numeric_limits<double>::epsilon();
}  // namespace detail

inline RecoveryReport recover_bisection(const ConservedState& u, const EosParams& eos,
                                        double tol = 1e-15,
                                        std::vector<double>* trace = nullptr,
                                        int max_iter = 200) {
  RecoveryReport rep;
  rep.algorithm = RecoveryAlg::Bisection;
  if (!is_admissible(u)) return rep;
  const double eps_tol = detail::scaled_tol(tol, u.E);
  double pl = 0.0, pr = pressure_upper_bound(u, eos);
  double p = 0.5 * (pl + pr);
  double f = phi(u, p, eos);
  double res = std::fabs(f);
  int n = 0;
  while (res > eps_tol && (pr - pl) > detail::kStepEps * p && n < max_iter) {
    if (f > 0.0)
      pr = p;
    else
      pl = p;
    p = 0.5 * (pl + pr);
    if (trace) trace->push_back(p);
    f = phi(u, p, eos);
    res = std::fabs(f);
    ++n;
  }
  rep.iterations = n;
  rep.residual = res;
  rep.hit_cap = (n >= max_iter && res > eps_tol);
  rep.W = primitives_from_pressure(u, p);
  rep.ok = in_Gw(rep.W);
  return rep;
}

inline RecoveryReport recover_fixed_point(const ConservedState& u, const EosParams& eos,
                                          double tol = 1e-15,
                                          std::vector<double>* trace = nullptr,
                                          int max_iter = 5000) {
  RecoveryReport rep;
  rep.algorithm = RecoveryAlg::FixedPoint;
  if (!is_admissible(u)) return rep;
  const double eps_tol = detail::scaled_tol(tol, u.E);
  double p = 0.5 * pressure_upper_bound(u, eos);
  double f = phi(u, p, eos);
  double res = std::fabs(f);
  int n = 0;
  while (res > eps_tol && n < max_iter) {
    double pn = p - (eos.gamma - 1.0) * f;
    if (!(pn > 0.0)) pn = 0.5 * p;  // round-off guard; never taken in exact arithmetic
    const double step = std::fabs(pn - p);
    p = pn;
    if (trace) trace->push_back(p);
    ++n;
    f = phi(u, p, eos);
    res = std::fabs(f);
    if (step <= detail::kStepEps * p) break;
  }
  rep.iterations = n;
  rep.residual = res;
  rep.hit_cap = (n >= max_iter && res > eps_tol);
  rep.W = primitives_from_pressure(u, p);
  rep.ok = in_Gw(rep.W);
  return rep;
}

// Hybrid switch: fixed-point update when the contraction rate
// delta = (G-1)|m|^2/E^2 beats bisection's 1/2, else bisection.
// Iteration cap N = log(eps_rf/p)/log(r) with eps_rf = 2^-52 * p_R^(0).
inline RecoveryReport recover_hybrid(const ConservedState& u, const EosParams& eos,
                                     double tol = 1e-15) {
  RecoveryReport rep;
  rep.algorithm = RecoveryAlg::Hybrid;
  if (!is_admissible(u)) return rep;
  const double eps_tol = detail::scaled_tol(tol, u.E);
  const double delta = (eos.gamma - 1.0) * u.msq() / (u.E * u.E);
  const double r = std::min(0.5, delta);
  const double pr0 = pressure_upper_bound(u, eos);
  double pl = 0.0, pr = pr0;
  double p = 0.5 * pr0;
  const double eps_rf = std::numeric_limits<double>::epsilon() * pr0;  // 2^-52 * p_R^(0)
  int cap = 200;
  if (r > 0.0) {
    const double est = std::log(eps_rf / p) / std::log(r);
    cap = (int)std::ceil(std::min(200.0, std::max(2.0, est)));
  } else {
    cap = 2;
  }
  double f = phi(u, p, eos);
  double res = std::fabs(f);
  int n = 0;
  while (res > eps_tol && n < cap) {
    const double prev = p;
    if (r < 0.5) {
      p = p - (eos.gamma - 1.0) * f;
      if (!(p > 0.0)) p = 0.5 * prev;  // round-off guard
    } else {
      if (f < 0.0)
        pl = p;
      else
        pr = p;
      p = 0.5 * (pl + pr);
    }
    ++n;
    f = phi(u, p, eos);
    res = std::fabs(f);
    if (std::fabs(p - prev) <= detail::kStepEps * std::fabs(p)) break;
  }
  rep.iterations = n;
  rep.residual = res;
  rep.hit_cap = (n >= cap && res > eps_tol);
  rep.W = primitives_from_pressure(u, p);
  rep.ok = in_Gw(rep.W);
  return rep;
}

// Newton baseline with caller-supplied warm start (previous time level);
// a negative iterate triggers one restart from zero.
inline RecoveryReport recover_newton(const ConservedState& u, const EosParams& eos,
                                     double tol = 1e-15, double warm_start = -1.0,
                                     int max_iter = 100) {
  RecoveryReport rep;
  rep.algorithm = RecoveryAlg::Newton;
  if (!is_admissible(u)) return rep;
  const double eps_tol = detail::scaled_tol(tol, u.E);
  double p = (warm_start > 0.0) ? warm_start : 0.5 * pressure_upper_bound(u, eos);
  bool restarted = false;
  double res = std::fabs(phi(u, p, eos));
  int n = 0;
  while (res > eps_tol && n < max_iter) {
    const double f = phi(u, p, eos);
    const double fp = phi_prime(u, p, eos);
    const double pn = p - f / fp;
    ++n;
    if (!(pn > 0.0)) {
      if (restarted) {
        rep.iterations = n;
        rep.residual = res;
        return rep;  // divergence after restart: report failure
      }
      restarted = true;
      p = 0.0;
      res = std::fabs(phi(u, p, eos));
      continue;
    }
    const double step = std::fabs(pn - p);
    p = pn;
    res = std::fabs(phi(u, p, eos));
    if (step <= detail::kStepEps * p) break;
  }
  rep.iterations = n;
  rep.residual = res;
  rep.hit_cap = (n >= max_iter && res > eps_tol);
  rep.W = primitives_from_pressure(u, p);
  rep.ok = in_Gw(rep.W);
  return rep;
}

inline RecoveryReport recover(const ConservedState& u, const EosParams& eos,
                              RecoveryAlg alg, double tol = 1e-15,
                              double warm_start = -1.0) {
  switch (alg) {
    case RecoveryAlg::Bisection: return recover_bisection(u, eos, tol);
    case RecoveryAlg::FixedPoint: return recover_fixed_point(u, eos, tol);
    case RecoveryAlg::Newton: {
      RecoveryReport rep = recover_newton(u, eos, tol, warm_start);
      if (!rep.ok) rep = recover_hybrid(u, eos, tol);  // fallback per driver contract
      return rep;
    }
    case RecoveryAlg::Hybrid:
    default: return recover_hybrid(u, eos, tol);
  }
}

}  // namespace rhd

#endif
