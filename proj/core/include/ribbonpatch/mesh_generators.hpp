#pragma once

// Structured triangulations of simple polygonal domains. These exist for
// tests, benchmarks and the convergence study; real inputs come as OFF files.

#include "ribbonpatch/mesh.hpp"

#include <span>

namespace ribbonpatch::generators {

enum class Diagonal {
  Forward,    ///< each cell split along (i,j)-(i+1,j+1)
  CrissCross, ///< each cell split into four around its centre
};

/// [x0,x1] x [y0,y1] with n x n cells.
TriMesh grid_rectangle(int n, double x0 = 0.0, double y0 = 0.0, double x1 = 1.0, double y1 = 1.0,
                       Diagonal diagonal = Diagonal::Forward);

/// Unit square [0,1]^2.
TriMesh unit_square(int n, Diagonal diagonal = Diagonal::Forward);

/// [-outer,outer]^2 minus the open square (-inner,inner)^2, on a uniform grid
/// with n cells per side of the outer square. `inner` must fall on grid lines.
TriMesh square_annulus(int n, double outer = 1.0, double inner = 0.4,
                       Diagonal diagonal = Diagonal::Forward);

/// Star-shaped polygon (corners counter-clockwise around `center`): every fan
/// triangle (center, c_k, c_k+1) is split into k^2 similar triangles.
TriMesh polygon_fan(std::span<const Vec2> corners, const Vec2 &center, int k);

/// Regular n-gon with circumradius r, first corner at angle `phase`.
std::vector<Vec2> regular_polygon(int sides, double radius = 1.0, double phase = 0.0);

/// Moves every interior vertex by a uniform random offset of at most
/// `amplitude` times the local minimum edge length. Used to produce obtuse
/// triangles; throws if a triangle would flip.
TriMesh jitter_interior(const TriMesh &mesh, double amplitude, unsigned seed);

} // namespace ribbonpatch::generators
