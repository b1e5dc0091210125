#include "rhd/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace rhd {

void edge_gauss_points(double ax, double ay, double bx, double by, double gx[2],
                       double gy[2]) {
  const double s = 1.0 / std::sqrt(3.0);
  const double t0 = 0.5 * (1.0 - s), t1 = 0.5 * (1.0 + s);
  gx[0] = ax + t0 * (bx - ax);
  gy[0] = ay + t0 * (by - ay);
  gx[1] = ax + t1 * (bx - ax);
  gy[1] = ay + t1 * (by - ay);
}

void interior_quadrature(const Mesh& m, int cell, double px[3], double py[3],
                         double w[3]) {
  const Triangle& t = m.tris[cell];
  for (int j = 0; j < 3; ++j) {
    px[j] = t.edge[j].mx;
    py[j] = t.edge[j].my;
    w[j] = t.area / 3.0;
  }
}

void source_quadrature(const Mesh& m, int cell, double px[3], double py[3],
                       double w[3]) {
  const Triangle& t = m.tris[cell];
  const Node& a = m.nodes[t.v[0]];
  const Node& b = m.nodes[t.v[1]];
  const Node& c = m.nodes[t.v[2]];
  const double l[3][3] = {{4, 1, 1}, {1, 4, 1}, {1, 1, 4}};
  for (int q = 0; q < 3; ++q) {
    px[q] = (l[q][0] * a.x + l[q][1] * b.x + l[q][2] * c.x) / 6.0;
    py[q] = (l[q][0] * a.y + l[q][1] * b.y + l[q][2] * c.y) / 6.0;
    w[q] = t.area / 3.0;
  }
}

void cell_vertices(const Mesh& m, int ext, double xs[3], double ys[3]) {
  if (ext < m.ncells()) {
    const Triangle& t = m.tris[ext];
    for (int i = 0; i < 3; ++i) {
      xs[i] = m.nodes[t.v[i]].x;
      ys[i] = m.nodes[t.v[i]].y;
    }
    return;
  }
  const GhostCell& g = m.ghosts[ext - m.ncells()];
  const GlobalEdge& e = m.edges[g.edge];
  const Triangle& t = m.tris[g.cell];
  for (int i = 0; i < 3; ++i) {
    const double px = m.nodes[t.v[i]].x, py = m.nodes[t.v[i]].y;
    const double d = (px - e.mx) * e.nx + (py - e.my) * e.ny;
    xs[i] = px - 2.0 * d * e.nx;
    ys[i] = py - 2.0 * d * e.ny;
  }
}

namespace {

double signed_area(const Node& a, const Node& b, const Node& c) {
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

void build_stencils(Mesh& m) {
  const int nc = m.ncells();
  m.stencils.resize(nc);
  for (int k = 0; k < nc; ++k) {
    Stencils& st = m.stencils[k];
    st.big.clear();
    st.big.push_back(k);
    auto push_unique = [&](int id) {
      if (std::find(st.big.begin(), st.big.end(), id) == st.big.end())
        st.big.push_back(id);
    };
    const Triangle& t = m.tris[k];
    st.small[0] = {t.nb[0], t.nb[1], t.nb[2]};
    st.has[0] = true;
    for (int j = 0; j < 3; ++j) push_unique(t.nb[j]);
    for (int i = 0; i < 3; ++i) {
      const int ki = t.nb[i];
      if (ki >= nc) {  // ghost neighbor: sectorial candidate dropped
        st.has[i + 1] = false;
        continue;
      }
      st.small[i + 1].clear();
      st.small[i + 1].push_back(ki);
      for (int j = 0; j < 3; ++j) {
        const int nn = m.tris[ki].nb[j];
        if (nn != k) {
          st.small[i + 1].push_back(nn);
          push_unique(nn);
        }
      }
      st.has[i + 1] = true;
    }
    st.quad_ok = (int)st.big.size() >= 6;
  }
}

}  // namespace

Mesh build_mesh(std::vector<Node> nodes, const std::vector<std::array<int, 3>>& cells) {
  Mesh m;
  m.nodes = std::move(nodes);
  const int nn = (int)m.nodes.size();
  const int nc = (int)cells.size();
  if (nc == 0) throw MeshError("mesh has no cells");
  m.tris.resize(nc);

  double total = 0;
  for (int k = 0; k < nc; ++k) {
    Triangle& t = m.tris[k];
    for (int j = 0; j < 3; ++j) {
      if (cells[k][j] < 0 || cells[k][j] >= nn)
        throw MeshError("cell references invalid node");
      t.v[j] = cells[k][j];
    }
    double sa = signed_area(m.nodes[t.v[0]], m.nodes[t.v[1]], m.nodes[t.v[2]]);
    if (sa < 0) {  // enforce counter-clockwise ordering
      std::swap(t.v[1], t.v[2]);
      sa = -sa;
    }
    t.area = sa;
    total += sa;
  }
  const double mean_area = total / nc;
  m.total_area = total;

  for (int k = 0; k < nc; ++k) {
    Triangle& t = m.tris[k];
    if (t.area < 1e-14 * mean_area) throw MeshError("degenerate triangle");
    const Node& a = m.nodes[t.v[0]];
    const Node& b = m.nodes[t.v[1]];
    const Node& c = m.nodes[t.v[2]];
    t.cx = (a.x + b.x + c.x) / 3.0;
    t.cy = (a.y + b.y + c.y) / 3.0;
    for (int j = 0; j < 3; ++j) {
      const Node& p = m.nodes[t.v[j]];
      const Node& q = m.nodes[t.v[(j + 1) % 3]];
      EdgeGeomLocal& e = t.edge[j];
      const double dx = q.x - p.x, dy = q.y - p.y;
      e.len = std::hypot(dx, dy);
      e.nx = dy / e.len;  // outward for CCW ordering
      e.ny = -dx / e.len;
      e.mx = 0.5 * (p.x + q.x);
      e.my = 0.5 * (p.y + q.y);
      edge_gauss_points(p.x, p.y, q.x, q.y, e.gx, e.gy);
      t.nb[j] = -1;
      t.edge_id[j] = -1;
    }
  }

  // edge topology
  std::map<std::pair<int, int>, int> emap;
  for (int k = 0; k < nc; ++k) {
    Triangle& t = m.tris[k];
    for (int j = 0; j < 3; ++j) {
      const int a = t.v[j], b = t.v[(j + 1) % 3];
      const std::pair<int, int> key = {std::min(a, b), std::max(a, b)};
      auto it = emap.find(key);
      if (it == emap.end()) {
        GlobalEdge e;
        e.cl = k;
        e.jl = j;
        e.nx = t.edge[j].nx;
        e.ny = t.edge[j].ny;
        e.len = t.edge[j].len;
        e.mx = t.edge[j].mx;
        e.my = t.edge[j].my;
        for (int q = 0; q < 2; ++q) {
          e.gx[q] = t.edge[j].gx[q];
          e.gy[q] = t.edge[j].gy[q];
        }
        e.marker[0] = m.nodes[a].marker;
        e.marker[1] = m.nodes[b].marker;
        m.edges.push_back(e);
        emap[key] = (int)m.edges.size() - 1;
        t.edge_id[j] = (int)m.edges.size() - 1;
      } else {
        GlobalEdge& e = m.edges[it->second];
        if (e.cr >= 0) throw MeshError("non-manifold edge (more than 2 incident cells)");
        e.cr = k;
        e.jr = j;
        t.edge_id[j] = it->second;
      }
    }
  }

  // neighbor links and ghosts for boundary edges
  for (int ei = 0; ei < (int)m.edges.size(); ++ei) {
    GlobalEdge& e = m.edges[ei];
    if (e.cr >= 0) {
      m.tris[e.cl].nb[e.jl] = e.cr;
      m.tris[e.cr].nb[e.jr] = e.cl;
    } else {
      e.ghost = (int)m.ghosts.size();
      m.bedges.push_back(ei);
      GhostCell g;
      g.cell = e.cl;
      g.edge = ei;
      const Triangle& t = m.tris[e.cl];
      const double d = (t.cx - e.mx) * e.nx + (t.cy - e.my) * e.ny;
      g.cx = t.cx - 2.0 * d * e.nx;
      g.cy = t.cy - 2.0 * d * e.ny;
      g.area = t.area;
      m.ghosts.push_back(g);
      m.tris[e.cl].nb[e.jl] = nc + e.ghost;
    }
  }

  build_stencils(m);
  return m;
}

Mesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open mesh file: " + path);
  int nn = 0;
  if (!(in >> nn) || nn < 3) throw MeshError("bad node count in " + path);
  std::vector<Node> nodes(nn);
  for (int i = 0; i < nn; ++i) {
    int id, marker;
    double x, y;
    if (!(in >> id >> x >> y >> marker)) throw MeshError("bad node line in " + path);
    if (id < 0 || id >= nn) throw MeshError("node id out of range in " + path);
    if (!std::isfinite(x) || !std::isfinite(y))
      throw MeshError("non-finite node coordinate in " + path);
    nodes[id] = {x, y, marker};
  }
  int nt = 0;
  if (!(in >> nt) || nt < 1) throw MeshError("bad cell count in " + path);
  std::vector<std::array<int, 3>> cells(nt);
  for (int i = 0; i < nt; ++i) {
    int id, a, b, c;
    if (!(in >> id >> a >> b >> c)) throw MeshError("bad cell line in " + path);
    if (id < 0 || id >= nt) throw MeshError("cell id out of range in " + path);
    cells[id] = {a, b, c};
  }
  return build_mesh(std::move(nodes), cells);
}

void save_mesh(const Mesh& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw MeshError("cannot write mesh file: " + path);
  out.precision(17);
  out << m.nodes.size() << "\n";
  for (size_t i = 0; i < m.nodes.size(); ++i)
    out << i << " " << m.nodes[i].x << " " << m.nodes[i].y << " " << m.nodes[i].marker
        << "\n";
  out << m.tris.size() << "\n";
  for (size_t k = 0; k < m.tris.size(); ++k)
    out << k << " " << m.tris[k].v[0] << " " << m.tris[k].v[1] << " " << m.tris[k].v[2]
        << "\n";
}

}  // namespace rhd
