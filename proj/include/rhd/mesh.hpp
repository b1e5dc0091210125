#ifndef RHD_MESH_HPP
#define RHD_MESH_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rhd {

struct MeshError : std::runtime_error {
  explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

struct Node {
  double x = 0, y = 0;
  int marker = 0;
};

struct EdgeGeomLocal {
  double len;
  double nx, ny;        // unit outward normal
  double gx[2], gy[2];  // 2-point Gauss nodes on the segment
  double mx, my;        // midpoint
};

struct Triangle {
  int v[3];        // node ids, counter-clockwise
  int nb[3];       // extended neighbor index across edge j (>= ncells: ghost)
  int edge_id[3];  // global edge index of edge j
  double area;
  double cx, cy;  // barycenter
  EdgeGeomLocal edge[3];
};

struct GlobalEdge {
  int cl = -1, cr = -1;  // adjacent cells; boundary edges have cr = -1
  int jl = -1, jr = -1;  // local edge index within cl / cr
  int ghost = -1;        // ghost id for boundary edges
  double nx, ny;         // unit normal pointing out of cl
  double len;
  double gx[2], gy[2];
  double mx, my;
  int marker[2] = {0, 0};  // endpoint node markers
  bool boundary() const { return cr < 0; }
};

// Mirror image of the interior cell across its boundary edge.
struct GhostCell {
  int cell;
  int edge;
  double area, cx, cy;
};

// Reconstruction stencils. big lists extended cell ids with K0 first,
// deduplicated. small[0] is the central stencil {K1,K2,K3}; small[1..3]
// the sectorial stencils {Ki, Ki1, Ki2}; members exclude K0.
struct Stencils {
  std::vector<int> big;
  std::array<std::vector<int>, 4> small;
  std::array<bool, 4> has = {false, false, false, false};
  bool quad_ok = false;
};

class Mesh {
 public:
  std::vector<Node> nodes;
  std::vector<Triangle> tris;
  std::vector<GlobalEdge> edges;
  std::vector<int> bedges;  // indices of boundary edges; ghost g belongs to bedges[g]
  std::vector<GhostCell> ghosts;
  std::vector<Stencils> stencils;
  double total_area = 0;

  int ncells() const { return (int)tris.size(); }
  int nextended() const { return ncells() + (int)ghosts.size(); }

  double cell_area(int ext) const {
    return ext < ncells() ? tris[ext].area : ghosts[ext - ncells()].area;
  }
  std::pair<double, double> cell_centroid(int ext) const {
    if (ext < ncells()) return {tris[ext].cx, tris[ext].cy};
    const GhostCell& g = ghosts[ext - ncells()];
    return {g.cx, g.cy};
  }
};

// 2-point Gauss nodes of a segment, at parameters (1 -+ 1/sqrt(3))/2; weights 1/2 each.
void edge_gauss_points(double ax, double ay, double bx, double by, double gx[2],
                       double gy[2]);

// 3-point edge-midpoint rule: exact for polynomials of total degree <= 2,
// weights |K|/3 (so the weights sum to the cell area).
void interior_quadrature(const Mesh& m, int cell, double px[3], double py[3],
                         double w[3]);

// 3-point interior rule at barycentric (2/3,1/6,1/6) permutations; also exact
// for degree <= 2 but with points strictly inside the triangle (r > 0 for
// cells touching the symmetry axis).
void source_quadrature(const Mesh& m, int cell, double px[3], double py[3],
                       double w[3]);

// Vertex coordinates of an extended cell; ghosts are the interior cell
// mirrored across the boundary edge.
void cell_vertices(const Mesh& m, int ext, double xs[3], double ys[3]);

// Average of f over the triangle with vertices a,b,c, exact for quadratics.
template <class F>
double triangle_average(double ax, double ay, double bx, double by, double cx,
                        double cy, F&& f) {
  return (f(0.5 * (ax + bx), 0.5 * (ay + by)) + f(0.5 * (bx + cx), 0.5 * (by + cy)) +
          f(0.5 * (cx + ax), 0.5 * (cy + ay))) /
         3.0;
}

Mesh build_mesh(std::vector<Node> nodes, const std::vector<std::array<int, 3>>& cells);
Mesh load_mesh(const std::string& path);
void save_mesh(const Mesh& m, const std::string& path);

}  // namespace rhd

#endif
