#include "rhd/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <stdexcept>

#include "rhd/recovery.hpp"

namespace rhd {

namespace {
struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_or_throw(const std::string& path, const char* mode) {
  std::FILE* f = std::fopen(path.c_str(), mode);
  if (!f) throw std::runtime_error("cannot open " + path);
  return FilePtr(f);
}
}  // namespace

void write_snapshot_csv(const std::string& path, const Mesh& mesh,
                        const std::vector<Vec4>& means, const EosParams& eos) {
  FilePtr f = open_or_throw(path, "w");
  std::fprintf(f.get(), "cell,x,y,D,m1,m2,E,rho,v1,v2,p\n");
  for (int k = 0; k < mesh.ncells(); ++k) {
    const Triangle& t = mesh.tris[k];
    const RecoveryReport rep = recover_hybrid(ConservedState::from(means[k]), eos);
    std::fprintf(f.get(),
                 "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", k,
                 t.cx, t.cy, means[k][0], means[k][1], means[k][2], means[k][3],
                 rep.W.rho, rep.W.v1, rep.W.v2, rep.W.p);
  }
}

std::vector<Vec4> read_snapshot_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<Vec4> means;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Vec4 u;
    int cell;
    double x, y, rho, v1, v2, p;
    if (std::sscanf(line.c_str(), "%d,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf", &cell,
                    &x, &y, &u[0], &u[1], &u[2], &u[3], &rho, &v1, &v2, &p) != 11)
      throw std::runtime_error("bad snapshot row: " + line);
    means.push_back(u);
  }
  return means;
}

void write_snapshot_vtk(const std::string& path, const Mesh& mesh,
                        const std::vector<Vec4>& means, const EosParams& eos) {
  FilePtr f = open_or_throw(path, "w");
  std::fprintf(f.get(), "# vtk DataFile Version 2.0\nsolution snapshot\nASCII\n");
  std::fprintf(f.get(), "DATASET UNSTRUCTURED_GRID\n");
  std::fprintf(f.get(), "POINTS %zu double\n", mesh.nodes.size());
  for (const Node& n : mesh.nodes) std::fprintf(f.get(), "%.9g %.9g 0\n", n.x, n.y);
  std::fprintf(f.get(), "CELLS %d %d\n", mesh.ncells(), 4 * mesh.ncells());
  for (const Triangle& t : mesh.tris)
    std::fprintf(f.get(), "3 %d %d %d\n", t.v[0], t.v[1], t.v[2]);
  std::fprintf(f.get(), "CELL_TYPES %d\n", mesh.ncells());
  for (int k = 0; k < mesh.ncells(); ++k) std::fprintf(f.get(), "5\n");

  std::vector<PrimitiveState> prim(mesh.ncells());
  for (int k = 0; k < mesh.ncells(); ++k)
    prim[k] = recover_hybrid(ConservedState::from(means[k]), eos).W;

  std::fprintf(f.get(), "CELL_DATA %d\n", mesh.ncells());
  auto scalars = [&](const char* name, auto&& get) {
    std::fprintf(f.get(), "SCALARS %s double 1\nLOOKUP_TABLE default\n", name);
    for (int k = 0; k < mesh.ncells(); ++k) std::fprintf(f.get(), "%.9g\n", get(k));
  };
  scalars("rho", [&](int k) { return prim[k].rho; });
  scalars("p", [&](int k) { return prim[k].p; });
  scalars("vmag", [&](int k) { return std::sqrt(prim[k].vsq()); });
  scalars("lnrho", [&](int k) { return std::log(prim[k].rho); });
}

void write_weights_dump(const std::string& path, const Reconstruction& rec,
                        const std::vector<Vec4>& means, const WenoOptions& opt) {
  const Mesh& m = rec.mesh();
  FilePtr f = open_or_throw(path, "w");
  std::fprintf(f.get(),
               "cell,beta0,beta1,beta2,beta3,beta4,tau,w0,w1,w2,w3,w4\n");
  // ghost slots are zero-filled: the dump reflects the interior density field
  std::vector<double> slots(10);
  for (int k = 0; k < m.ncells(); ++k) {
    const Stencils& st = m.stencils[k];
    for (size_t i = 0; i < st.big.size(); ++i) {
      const int id = st.big[i];
      slots[i] = id < m.ncells() ? means[id][0] : means[m.ghosts[id - m.ncells()].cell][0];
    }
    WenoWeights wrec{};
    rec.weno_scalar(k, slots.data(), opt, &wrec);
    std::fprintf(f.get(), "%d,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n",
                 k, wrec.beta[0], wrec.beta[1], wrec.beta[2], wrec.beta[3], wrec.beta[4],
                 wrec.tau, wrec.varpi[0], wrec.varpi[1], wrec.varpi[2], wrec.varpi[3],
                 wrec.varpi[4]);
  }
}

void write_abort_dump(const std::string& path, const Mesh& mesh,
                      const std::vector<Vec4>& means, int cell, double t,
                      const std::string& reason) {
  FilePtr f = open_or_throw(path, "w");
  std::fprintf(f.get(), "# abort at t=%.17g cell=%d reason=%s\n", t, cell,
               reason.c_str());
  std::fprintf(f.get(), "cell,x,y,D,m1,m2,E\n");
  for (int k = 0; k < mesh.ncells(); ++k)
    std::fprintf(f.get(), "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", k, mesh.tris[k].cx,
                 mesh.tris[k].cy, means[k][0], means[k][1], means[k][2], means[k][3]);
}

RunLog::RunLog(const std::string& path) : out_(path) {
  if (!out_) throw std::runtime_error("cannot open run log " + path);
  out_ << "step,t,dt,theta,min_theta_D,min_theta_g,retries,totD,totm1,totm2,totE\n";
  out_.precision(16);
}

void RunLog::row(long step, double t, double dt, const LimiterStats& ls, int retries,
                 const Vec4& totals) {
  out_ << step << ',' << t << ',' << dt << ',' << ls.ratio() << ',' << ls.min_theta_D
       << ',' << ls.min_theta_g << ',' << retries << ',' << totals[0] << ','
       << totals[1] << ',' << totals[2] << ',' << totals[3] << '\n';
}

void save_capture(const std::string& path, const std::vector<double>& data) {
  FilePtr f = open_or_throw(path, "wb");
  const uint64_t n = data.size();
  std::fwrite(&n, sizeof n, 1, f.get());
  std::fwrite(data.data(), sizeof(double), data.size(), f.get());
}

std::vector<double> load_capture(const std::string& path) {
  FilePtr f = open_or_throw(path, "rb");
  uint64_t n = 0;
  if (std::fread(&n, sizeof n, 1, f.get()) != 1)
    throw std::runtime_error("bad capture file " + path);
  std::vector<double> data(n);
  if (std::fread(data.data(), sizeof(double), n, f.get()) != n)
    throw std::runtime_error("truncated capture file " + path);
  return data;
}

}  // namespace rhd
