#ifndef RHD_MESHGEN_HPP
#define RHD_MESHGEN_HPP

#include <string>
#include <vector>

#include "rhd/mesh.hpp"

namespace rhd {

// Structured-split rectangle; alternating diagonals. jitter (fraction of the
// local spacing) perturbs interior nodes with the given seed; boundary nodes
// keep marker 1, interior 0.
Mesh make_grid(double x0, double x1, double y0, double y1, int nx, int ny,
               double jitter = 0.0, unsigned seed = 1);

struct BlockRect {
  double x0, x1, y0, y1;
};

// Union of axis-aligned rectangles at a common spacing h; coincident nodes on
// shared block faces are merged. h must divide all block extents.
Mesh make_blocks(const std::vector<BlockRect>& blocks, double h);

// Wedge channel: x in [-0.1, 2.7], bottom y = 0 for x <= 0 then a 30-degree
// ramp from (0,0); sheared grid up to y = ytop.
Mesh make_wedge_channel(double h, double ytop = 2.2);

// "grid:x0=..,x1=..,y0=..,y1=..,nx=..,ny=..[,jitter=..][,seed=..]",
// "blocks:h=..;x0,x1,y0,y1;x0,x1,y0,y1;...", "wedge:h=..[,ytop=..]",
// anything else is a mesh file path.
Mesh mesh_from_spec(const std::string& spec);

}  // namespace rhd

#endif
