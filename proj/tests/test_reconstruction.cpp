#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "oracles.hpp"
#include "rhd/meshgen.hpp"
#include "rhd/problems.hpp"
#include "rhd/reconstruction.hpp"

using namespace rhd;

namespace {

const EosParams kIdeal{5.0 / 3.0};

// averages of an analytic function over every slot of a cell's big stencil
std::vector<double> slot_averages(const Mesh& m, int cell,
                                  const std::function<double(double, double)>& f) {
  const Stencils& st = m.stencils[cell];
  std::vector<double> s(st.big.size());
  for (size_t i = 0; i < st.big.size(); ++i) {
    double xs[3], ys[3];
    cell_vertices(m, st.big[i], xs, ys);
    s[i] = triangle_average(xs[0], ys[0], xs[1], ys[1], xs[2], ys[2], f);
  }
  return s;
}

std::vector<Vec4> vec_averages(const Mesh& m,
                               const std::function<Vec4(double, double)>& f) {
  std::vector<Vec4> out(m.nextended());
  for (int k = 0; k < m.nextended(); ++k) {
    double xs[3], ys[3];
    cell_vertices(m, k, xs, ys);
    for (int c = 0; c < 4; ++c)
      out[k][c] = triangle_average(xs[0], ys[0], xs[1], ys[1], xs[2], ys[2],
                                   [&](double x, double y) { return f(x, y)[c]; });
  }
  return out;
}

int interior_cell(const Mesh& m) {
  for (int k = 0; k < m.ncells(); ++k) {
    bool ok = m.stencils[k].has[1] && m.stencils[k].has[2] && m.stencils[k].has[3];
    for (const int s : m.stencils[k].big)
      if (s >= m.ncells()) ok = false;
    if (ok) return k;
  }
  return 0;
}

double cell_average_of_poly(const Reconstruction& rec, int cell, const QuadPoly& p) {
  const Mesh& m = rec.mesh();
  double px[3], py[3], w[3];
  interior_quadrature(m, cell, px, py, w);
  double s = 0;
  for (int q = 0; q < 3; ++q) s += w[q] * rec.eval(cell, p, px[q], py[q]);
  return s / m.tris[cell].area;
}

}  // namespace

TEST_CASE("zero-mean basis integrates to zero") {
  const Mesh m = make_grid(0, 1, 0, 1, 5, 5, 0.3, 2);
  const Reconstruction rec(m);
  for (int k = 0; k < m.ncells(); ++k) {
    double px[3], py[3], w[3];
    interior_quadrature(m, k, px, py, w);
    for (int j = 0; j < 5; ++j) {
      double s = 0;
      for (int q = 0; q < 3; ++q) {
        double psi[5];
        rec.psi_all(k, px[q], py[q], psi);
        s += w[q] * psi[j];
      }
      CHECK(std::fabs(s / m.tris[k].area) < 1e-13);
    }
  }
}

TEST_CASE("quadratic fit: constant, linear, quadratic data") {
  const Mesh m = make_grid(-1, 1, -1, 1, 8, 8, 0.25, 9);
  const Reconstruction rec(m);
  const int k = interior_cell(m);

  auto check_exact = [&](const std::function<double(double, double)>& f, double tol) {
    const std::vector<double> s = slot_averages(m, k, f);
    QuadPoly p;
    REQUIRE(rec.fit_quadratic(k, s.data(), p));
    const Triangle& t = m.tris[k];
    for (int j = 0; j < 3; ++j)
      for (int q = 0; q < 2; ++q) {
        const double x = t.edge[j].gx[q], y = t.edge[j].gy[q];
        CHECK(rec.eval(k, p, x, y) == doctest::Approx(f(x, y)).epsilon(tol).scale(1.0));
      }
    return p;
  };

  const QuadPoly pc = check_exact([](double, double) { return 3.25; }, 1e-13);
  for (int j = 0; j < 5; ++j) CHECK(std::fabs(pc.a[j]) < 1e-12);

  check_exact([](double x, double) { return x; }, 1e-12);
  check_exact([](double x, double y) { return x * x + 3 * x * y; }, 1e-11);
}

TEST_CASE("linear fits: constant and linear data, mean exactness") {
  const Mesh m = make_grid(-1, 1, -1, 1, 8, 8, 0.25, 9);
  const Reconstruction rec(m);
  const int k = interior_cell(m);

  const std::vector<double> sc =
      slot_averages(m, k, [](double, double) { return 2.0; });
  for (int ell = 0; ell < 4; ++ell) {
    LinPoly lp;
    REQUIRE(rec.fit_linear(k, sc.data(), ell, lp));
    CHECK(std::fabs(lp.b[0]) < 1e-13);
    CHECK(std::fabs(lp.b[1]) < 1e-13);
  }

  auto lin = [](double x, double y) { return 2 * x - y; };
  const std::vector<double> sl = slot_averages(m, k, lin);
  const Triangle& t = m.tris[k];
  for (int ell = 0; ell < 4; ++ell) {
    LinPoly lp;
    REQUIRE(rec.fit_linear(k, sl.data(), ell, lp));
    QuadPoly q;
    q.mean = lp.mean;
    q.a[0] = lp.b[0];
    q.a[1] = lp.b[1];
    for (int j = 0; j < 3; ++j)
      CHECK(rec.eval(k, q, t.edge[j].mx, t.edge[j].my) ==
            doctest::Approx(lin(t.edge[j].mx, t.edge[j].my)).epsilon(1e-12));
  }

  // quadratic data: nonzero residual but the K0 mean is exact by construction
  const std::vector<double> sq =
      slot_averages(m, k, [](double x, double) { return x * x; });
  LinPoly lp;
  REQUIRE(rec.fit_linear(k, sq.data(), 0, lp));
  QuadPoly q;
  q.mean = lp.mean;
  q.a[0] = lp.b[0];
  q.a[1] = lp.b[1];
  CHECK(cell_average_of_poly(rec, k, q) == doctest::Approx(sq[0]).epsilon(1e-13));
}

TEST_CASE("smoothness indicators: constants, linears, scaling") {
  const Mesh m = make_grid(-1, 1, -1, 1, 8, 8, 0.2, 4);
  const Reconstruction rec(m);
  const int k = interior_cell(m);
  const double area = m.tris[k].area;

  auto indicators = [&](const std::function<double(double, double)>& f, double beta[5]) {
    const std::vector<double> s = slot_averages(m, k, f);
    QuadPoly quad;
    LinPoly lin[4];
    REQUIRE(rec.fit_quadratic(k, s.data(), quad));
    for (int ell = 0; ell < 4; ++ell) REQUIRE(rec.fit_linear(k, s.data(), ell, lin[ell]));
    rec.smoothness_indicators(k, quad, lin, beta);
  };

  double beta[5];
  indicators([](double, double) { return 4.0; }, beta);
  for (int i = 0; i < 5; ++i) CHECK(std::fabs(beta[i]) < 1e-24);

  indicators([](double x, double) { return x; }, beta);
  for (int i = 0; i < 5; ++i) CHECK(beta[i] == doctest::Approx(area).epsilon(1e-10));

  // beta(zeta u) = zeta^2 beta(u)
  const double zeta = 10.0;
  double beta2[5];
  auto f = [](double x, double y) { return std::sin(x) + 0.5 * x * y; };
  indicators(f, beta);
  indicators([&](double x, double y) { return zeta * f(x, y); }, beta2);
  for (int i = 0; i < 5; ++i)
    CHECK(beta2[i] == doctest::Approx(zeta * zeta * beta[i]).epsilon(1e-12));
}

TEST_CASE("nonlinear weights: linear-weight limit and scaling invariance") {
  const Mesh m = make_grid(-1, 1, -1, 1, 8, 8, 0.2, 4);
  const Reconstruction rec(m);
  const int k = interior_cell(m);
  const bool present[5] = {true, true, true, true, true};

  // equal smoothness: tau = 0 so the weights equal the linear weights
  const std::vector<double> s = slot_averages(m, k, [](double x, double) { return x; });
  double beta[5] = {0.3, 0.3, 0.3, 0.3, 0.3};
  WenoOptions opt;
  WenoWeights w = rec.nonlinear_weights(k, beta, present, s.data(), opt);
  CHECK(w.tau == 0.0);
  CHECK(w.varpi[0] == doctest::Approx(0.96).epsilon(1e-14));
  for (int i = 1; i < 5; ++i) CHECK(w.varpi[i] == doctest::Approx(0.01).epsilon(1e-14));
  double sum = 0;
  for (int i = 0; i < 5; ++i) sum += w.varpi[i];
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));

  // scaling invariance of the full pipeline, zeta = 1e-4
  auto f = [](double x, double y) { return 1.0 + 0.3 * std::sin(3 * x) * y; };
  const std::vector<double> s1 = slot_averages(m, k, f);
  std::vector<double> s2 = s1;
  for (double& v : s2) v *= 1e-4;
  WenoWeights w1{}, w2{};
  rec.weno_scalar(k, s1.data(), opt, &w1);
  rec.weno_scalar(k, s2.data(), opt, &w2);
  for (int i = 0; i < 5; ++i) CHECK(std::fabs(w1.varpi[i] - w2.varpi[i]) <= 1e-15);

  // the comparison weights are not scaling-invariant
  WenoOptions orig;
  orig.scaling_invariant = false;
  rec.weno_scalar(k, s1.data(), orig, &w1);
  rec.weno_scalar(k, s2.data(), orig, &w2);
  double dev = 0;
  for (int i = 0; i < 5; ++i) dev = std::max(dev, std::fabs(w1.varpi[i] - w2.varpi[i]));
  CHECK(dev > 1e-10);
}

TEST_CASE("weights approach linear weights at least linearly in |K|") {
  auto f = [](double x, double y) { return std::sin(x + 0.5 * y); };
  std::vector<double> hs, devs;
  for (const int n : {16, 32, 64}) {
    const Mesh m = make_grid(-1, 1, -1, 1, n, n, 0.0, 1);
    const Reconstruction rec(m);
    std::vector<double> d;
    for (int k = 0; k < m.ncells(); ++k) {
      bool ok = m.stencils[k].has[1] && m.stencils[k].has[2] && m.stencils[k].has[3];
      for (const int s : m.stencils[k].big)
        if (s >= m.ncells()) ok = false;
      if (!ok) continue;
      const std::vector<double> s = slot_averages(m, k, f);
      WenoWeights w{};
      WenoOptions opt;
      rec.weno_scalar(k, s.data(), opt, &w);
      d.push_back(std::fabs(w.varpi[0] - w.gamma[0]));
    }
    std::sort(d.begin(), d.end());
    hs.push_back(m.tris[0].area);
    devs.push_back(d[d.size() / 2]);
    CHECK(d.back() <= m.tris[0].area);  // varpi = gamma (1 + O(|K|))
  }
  const double slope =
      std::log(devs.front() / devs.back()) / std::log(hs.front() / hs.back());
  CHECK(slope > 0.9);
  CHECK(slope < 2.5);
}

TEST_CASE("weno_scalar: constants, mean preservation, homogeneity") {
  const Mesh m = make_grid(-1, 1, -1, 1, 10, 10, 0.25, 13);
  const Reconstruction rec(m);
  WenoOptions opt;
  test::StateGen gen(3);

  for (int k = 0; k < m.ncells(); ++k) {
    const Stencils& st = m.stencils[k];
    std::vector<double> s(st.big.size(), 7.5);
    const QuadPoly p = rec.weno_scalar(k, s.data(), opt);
    const Triangle& t = m.tris[k];
    for (int j = 0; j < 3; ++j)
      CHECK(rec.eval(k, p, t.edge[j].gx[0], t.edge[j].gy[0]) ==
            doctest::Approx(7.5).epsilon(1e-14));

    for (size_t i = 0; i < s.size(); ++i) s[i] = gen.uniform(0.5, 2.0);
    const QuadPoly pr = rec.weno_scalar(k, s.data(), opt);
    CHECK(cell_average_of_poly(rec, k, pr) == doctest::Approx(s[0]).epsilon(1e-13));

    const double zeta = 1e-4;
    std::vector<double> sz = s;
    for (double& v : sz) v *= zeta;
    const QuadPoly pz = rec.weno_scalar(k, sz.data(), opt);
    CHECK(pz.mean == doctest::Approx(zeta * pr.mean).epsilon(1e-13));
    for (int j = 0; j < 5; ++j)
      CHECK(pz.a[j] == doctest::Approx(zeta * pr.a[j]).epsilon(1e-12).scale(zeta * 1e-3));
  }
}

TEST_CASE("forced linear weights reproduce quadratics exactly") {
  const Mesh m = make_grid(-1, 1, -1, 1, 8, 8, 0.2, 21);
  const Reconstruction rec(m);
  const int k = interior_cell(m);
  auto f = [](double x, double y) { return 0.5 * x * x - x * y + 2 * y * y + x - 3; };
  const std::vector<double> s = slot_averages(m, k, f);
  WenoOptions opt;
  opt.force_linear = true;
  const QuadPoly p = rec.weno_scalar(k, s.data(), opt);
  const Triangle& t = m.tris[k];
  for (int j = 0; j < 3; ++j)
    for (int q = 0; q < 2; ++q) {
      const double x = t.edge[j].gx[q], y = t.edge[j].gy[q];
      CHECK(rec.eval(k, p, x, y) == doctest::Approx(f(x, y)).epsilon(1e-11));
    }
}

TEST_CASE("third-order convergence at edge Gauss points on the vortex density") {
  const VortexParams vp{5.0, -0.5, -0.5, 1.4};
  auto rho = [&](double x, double y) { return vortex_state(x, y, vp).rho; };
  std::vector<double> hs, errs;
  for (const int n : {16, 32, 64}) {
    const Mesh m = make_grid(-5, 5, -5, 5, n, n, 0.0, 1);
    const Reconstruction rec(m);
    std::vector<double> avg(m.nextended());
    for (int k = 0; k < m.nextended(); ++k) {
      double xs[3], ys[3];
      cell_vertices(m, k, xs, ys);
      avg[k] = triangle_average(xs[0], ys[0], xs[1], ys[1], xs[2], ys[2], rho);
    }
    WenoOptions opt;
    double emax = 0;
    std::vector<double> slots(12);
    for (int k = 0; k < m.ncells(); ++k) {
      const Stencils& st = m.stencils[k];
      for (size_t i = 0; i < st.big.size(); ++i) slots[i] = avg[st.big[i]];
      const QuadPoly p = rec.weno_scalar(k, slots.data(), opt);
      const Triangle& t = m.tris[k];
      for (int j = 0; j < 3; ++j)
        for (int q = 0; q < 2; ++q) {
          const double x = t.edge[j].gx[q], y = t.edge[j].gy[q];
          emax = std::max(emax, std::fabs(rec.eval(k, p, x, y) - rho(x, y)));
        }
    }
    hs.push_back(10.0 / n);
    errs.push_back(emax);
  }
  const double slope = std::log(errs[1] / errs[2]) / std::log(hs[1] / hs[2]);
  CHECK(slope > 2.7);
  CHECK(slope < 3.3);
}

TEST_CASE("characteristic reconstruction: constants, mean, homogeneity") {
  const Mesh m = make_grid(0, 1, 0, 1, 8, 8, 0.25, 31);
  const Reconstruction rec(m);
  WenoOptions opt;

  const PrimitiveState wc{1.0, 0.3, -0.2, 2.0};
  const ConservedState uc = prim_to_cons(wc, kIdeal);
  std::vector<Vec4> avg(m.nextended(), uc.vec());
  for (int k = 0; k < m.ncells(); ++k) {
    const PolyVec p = rec.weno_characteristic(k, avg, wc, kIdeal, opt);
    const Triangle& t = m.tris[k];
    for (int j = 0; j < 3; ++j) {
      const Vec4 v = rec.eval(k, p, t.edge[j].gx[0], t.edge[j].gy[0]);
      for (int c = 0; c < 4; ++c)
        CHECK(v[c] == doctest::Approx(uc.vec()[c]).epsilon(1e-13));
    }
  }

  auto field = [&](double x, double y) {
    const PrimitiveState w{1.0 + 0.2 * std::sin(2 * x) * std::cos(y), 0.2 * x,
                           -0.1 * y, 1.5 + 0.3 * std::cos(2 * y)};
    return prim_to_cons(w, kIdeal).vec();
  };
  const std::vector<Vec4> av = vec_averages(m, field);
  const double zeta = 1e-2;
  std::vector<Vec4> avz(av.size());
  for (size_t i = 0; i < av.size(); ++i) avz[i] = zeta * av[i];

  for (int k = 0; k < m.ncells(); ++k) {
    const PrimitiveState wbar = recover_hybrid(ConservedState::from(av[k]), kIdeal).W;
    const PolyVec p = rec.weno_characteristic(k, av, wbar, kIdeal, opt);
    for (int c = 0; c < 4; ++c) CHECK(p.mean[c] == av[k][c]);

    double px[3], py[3], w[3];
    interior_quadrature(m, k, px, py, w);
    for (int c = 0; c < 4; ++c) {
      double s = 0;
      for (int q = 0; q < 3; ++q) s += w[q] * rec.eval(k, p, px[q], py[q])[c];
      CHECK(s / m.tris[k].area ==
            doctest::Approx(p.mean[c]).epsilon(1e-13).scale(std::fabs(p.mean[c])));
    }

    const PrimitiveState wbarz = recover_hybrid(ConservedState::from(avz[k]), kIdeal).W;
    const PolyVec pz = rec.weno_characteristic(k, avz, wbarz, kIdeal, opt);
    for (int j = 0; j < 5; ++j)
      for (int c = 0; c < 4; ++c)
        CHECK(pz.a[j][c] ==
              doctest::Approx(zeta * p.a[j][c]).epsilon(1e-11).scale(zeta));
  }
}
