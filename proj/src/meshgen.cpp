#include "rhd/meshgen.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace rhd {

namespace {

void split_quad(std::vector<std::array<int, 3>>& cells, int a, int b, int c, int d) {
  // quad corners a(bl), b(br), c(tr), d(tl); a uniform diagonal keeps all ten
  // stencil cells distinct on interior cells
  cells.push_back({a, b, c});
  cells.push_back({a, c, d});
}

}  // namespace

Mesh make_grid(double x0, double x1, double y0, double y1, int nx, int ny,
               double jitter, unsigned seed) {
  if (nx < 1 || ny < 1) throw MeshError("make_grid: nx, ny must be >= 1");
  const double hx = (x1 - x0) / nx, hy = (y1 - y0) / ny;
  std::vector<Node> nodes((nx + 1) * (ny + 1));
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> un(-0.5, 0.5);
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      Node& n = nodes[j * (nx + 1) + i];
      n.x = x0 + i * hx;
      n.y = y0 + j * hy;
      const bool bdry = (i == 0 || i == nx || j == 0 || j == ny);
      n.marker = bdry ? 1 : 0;
      if (!bdry && jitter > 0) {
        n.x += jitter * hx * un(rng);
        n.y += jitter * hy * un(rng);
      }
    }
  std::vector<std::array<int, 3>> cells;
  cells.reserve(2 * nx * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int a = j * (nx + 1) + i, b = a + 1;
      const int d = a + (nx + 1), c = d + 1;
      split_quad(cells, a, b, c, d);
    }
  return build_mesh(std::move(nodes), cells);
}

Mesh make_blocks(const std::vector<BlockRect>& blocks, double h) {
  if (blocks.empty()) throw MeshError("make_blocks: no blocks");
  std::vector<Node> nodes;
  std::vector<std::array<int, 3>> cells;
  std::map<std::pair<int64_t, int64_t>, int> index;  // node dedup on the h/2 lattice
  auto node_at = [&](double x, double y) {
    const std::pair<int64_t, int64_t> key = {(int64_t)std::llround(2.0 * x / h),
                                             (int64_t)std::llround(2.0 * y / h)};
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    nodes.push_back({x, y, 0});
    index[key] = (int)nodes.size() - 1;
    return (int)nodes.size() - 1;
  };
  for (const BlockRect& b : blocks) {
    const int nx = (int)std::llround((b.x1 - b.x0) / h);
    const int ny = (int)std::llround((b.y1 - b.y0) / h);
    if (nx < 1 || ny < 1 || std::fabs(b.x0 + nx * h - b.x1) > 1e-9 * h ||
        std::fabs(b.y0 + ny * h - b.y1) > 1e-9 * h)
      throw MeshError("make_blocks: h does not divide a block extent");
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const int a = node_at(b.x0 + i * h, b.y0 + j * h);
        const int bb = node_at(b.x0 + (i + 1) * h, b.y0 + j * h);
        const int c = node_at(b.x0 + (i + 1) * h, b.y0 + (j + 1) * h);
        const int d = node_at(b.x0 + i * h, b.y0 + (j + 1) * h);
        split_quad(cells, a, bb, c, d);
      }
  }
  return build_mesh(std::move(nodes), cells);
}

Mesh make_wedge_channel(double h, double ytop) {
  const double xa = -0.1, xb = 2.7;
  const int nx = (int)std::llround((xb - xa) / h);
  const int ny = (int)std::llround(ytop / h);
  if (nx < 2 || ny < 2) throw MeshError("make_wedge_channel: h too coarse");
  // a node column must land exactly on the ramp corner at x = 0
  if (std::fabs(0.1 / h - std::llround(0.1 / h)) > 1e-9 ||
      std::fabs(nx * h - (xb - xa)) > 1e-9 * h)
    throw MeshError("make_wedge_channel: h must divide 0.1 and 2.8");
  const double tan30 = std::tan(M_PI / 6.0);
  std::vector<Node> nodes((nx + 1) * (ny + 1));
  for (int i = 0; i <= nx; ++i) {
    const double x = xa + i * (xb - xa) / nx;
    const double yb = x > 0 ? x * tan30 : 0.0;
    for (int j = 0; j <= ny; ++j) {
      Node& n = nodes[j * (nx + 1) + i];
      n.x = x;
      n.y = yb + j * (ytop - yb) / ny;
      n.marker = (i == 0 || i == nx || j == 0 || j == ny) ? 1 : 0;
    }
  }
  std::vector<std::array<int, 3>> cells;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int a = j * (nx + 1) + i, b = a + 1;
      const int d = a + (nx + 1), c = d + 1;
      split_quad(cells, a, b, c, d);
    }
  return build_mesh(std::move(nodes), cells);
}

namespace {

std::map<std::string, double> parse_kv(const std::string& s) {
  std::map<std::string, double> kv;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw MeshError("bad mesh spec item: " + item);
    kv[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
  }
  return kv;
}

double need(const std::map<std::string, double>& kv, const std::string& k) {
  auto it = kv.find(k);
  if (it == kv.end()) throw MeshError("mesh spec missing key: " + k);
  return it->second;
}

double get_or(const std::map<std::string, double>& kv, const std::string& k,
              double dflt) {
  auto it = kv.find(k);
  return it == kv.end() ? dflt : it->second;
}

}  // namespace

Mesh mesh_from_spec(const std::string& spec) {
  if (spec.rfind("grid:", 0) == 0) {
    auto kv = parse_kv(spec.substr(5));
    return make_grid(need(kv, "x0"), need(kv, "x1"), need(kv, "y0"), need(kv, "y1"),
                     (int)need(kv, "nx"), (int)need(kv, "ny"), get_or(kv, "jitter", 0.0),
                     (unsigned)get_or(kv, "seed", 1));
  }
  if (spec.rfind("wedge:", 0) == 0) {
    auto kv = parse_kv(spec.substr(6));
    return make_wedge_channel(need(kv, "h"), get_or(kv, "ytop", 2.2));
  }
  if (spec.rfind("blocks:", 0) == 0) {
    std::stringstream ss(spec.substr(7));
    std::string part;
    if (!std::getline(ss, part, ';')) throw MeshError("bad blocks spec");
    const double h = need(parse_kv(part), "h");
    std::vector<BlockRect> blocks;
    while (std::getline(ss, part, ';')) {
      std::stringstream bs(part);
      BlockRect b{};
      char comma;
      if (!(bs >> b.x0 >> comma >> b.x1 >> comma >> b.y0 >> comma >> b.y1))
        throw MeshError("bad block rect: " + part);
      blocks.push_back(b);
    }
    return make_blocks(blocks, h);
  }
  return load_mesh(spec);
}

}  // namespace rhd
