#pragma once

// Canonical inputs used by the command-line tool, the tests and the
// benchmarks: a five-sided vertex blend, a square domain with a square hole,
// and flat ribbons over a polygon.

#include "ribbonpatch/io.hpp"

#include <functional>

namespace ribbonpatch::examples {

struct ExampleInput {
  TriMesh mesh;
  io::RibbonSet ribbons;
};

/// Planar ribbon for the domain edge a -> b (domain on the left). The boundary
/// row is the edge lifted to z = height(x, y); the tangent row is offset by
/// `depth` along the inward normal plus `rise(s)` in z. Cubic in s with
/// `segments` uniform knot spans (control points at the Greville abscissae),
/// linear in h.
Ribbon edge_ribbon(const Vec2 &a, const Vec2 &b, const std::function<double(double, double)> &height, double depth,
                   const std::function<double(double)> &rise, int segments = 1);

/// Regular pentagon, five cubic ribbons (one a two-segment B-spline) with a
/// saddle-shaped boundary and tilted cross-derivatives.
ExampleInput vertex_blend(int resolution);

/// Non-convex five-sided domain (a square with a notch cut into its top
/// side) with cubic ribbons. Its tangent-row blend fields dip clearly below
/// zero, unlike those of a regular pentagon.
ExampleInput notched_pentagon(int resolution);

/// [-1,1]^2 minus [-0.4,0.4]^2. The outer ribbons are flat at z = 0 and lean
/// inward, the hole is a raised rim at z = 0.6 sloping down into the domain.
/// `resolution` is the number of grid cells per side of the outer square and
/// must be a multiple of 5.
ExampleInput multiply_connected(int resolution);

/// Regular polygon with ribbons lying in the plane z = 0 whose cross
/// derivatives follow the domain's inward normals.
ExampleInput flat_polygon(int sides, int resolution);

/// Unit square with flat ribbons R(s,h) equal to the identity lift of the
/// domain near each side.
ExampleInput flat_square(int resolution);

} // namespace ribbonpatch::examples
