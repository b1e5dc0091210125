#ifndef RHD_LIMITER_HPP
#define RHD_LIMITER_HPP

#include "rhd/reconstruction.hpp"

namespace rhd {

struct CellLimiterResult {
  double theta_D = 1.0;
  double theta_g = 1.0;
  bool limited = false;
};

struct LimiterStats {
  long cells_limited = 0;
  long cells_seen = 0;
  double min_theta_D = 1.0;
  double min_theta_g = 1.0;
  void merge(const CellLimiterResult& r) {
    ++cells_seen;
    if (r.limited) ++cells_limited;
    min_theta_D = std::min(min_theta_D, r.theta_D);
    min_theta_g = std::min(min_theta_g, r.theta_g);
  }
  void merge(const LimiterStats& o) {
    cells_limited += o.cells_limited;
    cells_seen += o.cells_seen;
    min_theta_D = std::min(min_theta_D, o.min_theta_D);
    min_theta_g = std::min(min_theta_g, o.min_theta_g);
  }
  double ratio() const { return cells_seen ? (double)cells_limited / cells_seen : 0.0; }
};

// Two-step scaling limiter: density first, then the full vector through the
// concave functional g. Decision set: the 6 edge Gauss points plus the
// weighted-combination state; in axisymmetric mode the 3 interior source
// quadrature points are added. eps_floor is 1e-13 by default, 0 in the
// homogeneity test mode. Mean is preserved exactly (fluctuations scale).
CellLimiterResult pcp_limit_cell(const Reconstruction& rec, int cell, PolyVec& P,
                                 bool axisymmetric, double eps_floor = 1e-13);

}  // namespace rhd

#endif
