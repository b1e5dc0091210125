#ifndef RHD_IO_HPP
#define RHD_IO_HPP

#include <fstream>
#include <string>
#include <vector>

#include "rhd/limiter.hpp"
#include "rhd/mesh.hpp"
#include "rhd/reconstruction.hpp"
#include "rhd/state.hpp"

namespace rhd {

// one row per cell: id, barycenter, conserved mean, recovered primitives
void write_snapshot_csv(const std::string& path, const Mesh& mesh,
                        const std::vector<Vec4>& means, const EosParams& eos);
// conserved means from a snapshot (bitwise round trip of the U columns)
std::vector<Vec4> read_snapshot_csv(const std::string& path);

// legacy-format unstructured grid with cell scalars rho, p, |v|, ln rho
void write_snapshot_vtk(const std::string& path, const Mesh& mesh,
                        const std::vector<Vec4>& means, const EosParams& eos);

// per-cell WENO weight diagnostics for the density field
void write_weights_dump(const std::string& path, const Reconstruction& rec,
                        const std::vector<Vec4>& means, const WenoOptions& opt);

void write_abort_dump(const std::string& path, const Mesh& mesh,
                      const std::vector<Vec4>& means, int cell, double t,
                      const std::string& reason);

class RunLog {
 public:
  explicit RunLog(const std::string& path);
  void row(long step, double t, double dt, const LimiterStats& ls, int retries,
           const Vec4& totals);

 private:
  std::ofstream out_;
};

void save_capture(const std::string& path, const std::vector<double>& data);
std::vector<double> load_capture(const std::string& path);

}  // namespace rhd

#endif
