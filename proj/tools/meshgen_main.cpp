#include <CLI11.hpp>
#include <cstdio>

#include "rhd/meshgen.hpp"

int main(int argc, char** argv) {
  CLI::App app{"generate a triangular mesh file from a generator spec"};
  std::string spec, out;
  app.add_option("--spec", spec, "grid:/wedge:/blocks: generator spec")->required();
  app.add_option("--out", out, "output mesh file")->required();
  CLI11_PARSE(app, argc, argv);
  try {
    const rhd::Mesh m = rhd::mesh_from_spec(spec);
    rhd::save_mesh(m, out);
    std::printf("%zu nodes, %d cells -> %s\n", m.nodes.size(), m.ncells(), out.c_str());
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
