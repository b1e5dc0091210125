#ifndef RHD_RECONSTRUCTION_HPP
#define RHD_RECONSTRUCTION_HPP

#include <vector>

#include "rhd/eigensystem.hpp"
#include "rhd/mesh.hpp"
#include "rhd/recovery.hpp"
#include "rhd/state.hpp"

namespace rhd {

// Quadratic polynomial on the zero-mean basis psi1..psi5 of its cell:
// P(x) = mean + sum_j a[j] psi_j(x). The cell average is mean exactly.
struct QuadPoly {
  double mean = 0;
  double a[5] = {0, 0, 0, 0, 0};
};

struct LinPoly {
  double mean = 0;
  double b[2] = {0, 0};
};

struct PolyVec {
  Vec4 mean{};
  Vec4 a[5]{};
};

struct WenoOptions {
  bool scaling_invariant = true;  // default weights; false: comparison weights
  bool force_linear = false;      // test hook: varpi = gamma
};

struct WenoWeights {
  double gamma[5];  // linear weights (renormalized over surviving candidates)
  double beta[5];
  double tau = 0;
  double epsilon = 0;
  double varpi[5];
  bool present[5];
};

class Reconstruction {
 public:
  explicit Reconstruction(const Mesh& mesh);

  const Mesh& mesh() const { return *mesh_; }

  void psi_all(int cell, double x, double y, double out[5]) const;
  double eval(int cell, const QuadPoly& p, double x, double y) const;
  Vec4 eval(int cell, const PolyVec& p, double x, double y) const;

  // slots are the averages ordered as mesh.stencils[cell].big
  bool fit_quadratic(int cell, const double* slots, QuadPoly& out) const;
  bool fit_linear(int cell, const double* slots, int ell, LinPoly& out) const;
  void smoothness_indicators(int cell, const QuadPoly& quad, const LinPoly lin[4],
                             double beta[5]) const;
  WenoWeights nonlinear_weights(int cell, const double beta[5], const bool present[5],
                                const double* slots, const WenoOptions& opt) const;

  QuadPoly weno_scalar(int cell, const double* slots, const WenoOptions& opt,
                       WenoWeights* rec = nullptr) const;

  // Characteristic-wise vector reconstruction: projection onto the eigenvectors
  // of the cell-mean state for each edge normal, scalar WENO per field, and an
  // area-weighted average over the three directions. wbar must be the recovered
  // primitive state of avg[cell].
  PolyVec weno_characteristic(int cell, const std::vector<Vec4>& avg,
                              const PrimitiveState& wbar, const EosParams& eos,
                              const WenoOptions& opt) const;

  bool quad_ok(int cell) const { return fits_[cell].quad_ok; }

 private:
  struct LinFit {
    int n = 0;
    int slot[3];        // positions of the stencil members within big
    double pinv[2][3];  // least-squares pseudo-inverse
    bool ok = false;
  };
  struct CellFit {
    double cx, cy, inv_s, inv_area, area;
    double c3, c4, c5;  // subtracted second moments of psi3..psi5
    double qx[3], qy[3];  // interior quadrature points minus centroid
    int nbig = 0;
    double qpinv[5][9];
    bool quad_ok = false;
    LinFit lin[4];
  };

  const Mesh* mesh_;
  std::vector<CellFit> fits_;
};

}  // namespace rhd

#endif
