#pragma once

#include "ribbonpatch/mesh.hpp"
#include "ribbonpatch/side_assignment.hpp"
#include "ribbonpatch/spline.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ribbonpatch::io {

/// ASCII OFF with triangular faces. Vertices may be 2D or 3D with z = 0.
TriMesh read_off(std::istream &in);
TriMesh load_off(const std::filesystem::path &path);
void write_off(std::ostream &out, const TriMesh &mesh);

/// Ribbon file:
///
///     { "sides": [ { "degree_s": 3, "degree_h": 1,
///                    "knots_s": [...], "knots_h": [...],
///                    "control_net": [[[x,y,z], ...], ...] }, ... ],
///       "loops": [ { "sides": [0, 1, 2], "corners": [[x,y], ...] }, ... ] }
///
/// control_net[i][j] runs along s with i and along h with j (j = 0 is the
/// boundary row). Knot vectors may be omitted for Bézier ribbons. Corner k of
/// a loop is where sides[k] starts.
struct RibbonSet {
  std::vector<Ribbon> sides;
  std::vector<LoopCorners> loops;
};

RibbonSet read_ribbons(std::istream &in);
RibbonSet load_ribbons(const std::filesystem::path &path);
void write_ribbons(std::ostream &out, const RibbonSet &set);

/// Side sidecar: { "assignment": [ { "vertex": 7, "side": 0, "s": 0.25 }, ... ] }.
SideAssignment read_side_assignment(std::istream &in, int vertex_count);
SideAssignment load_side_assignment(const std::filesystem::path &path, int vertex_count);
void write_side_assignment(std::ostream &out, const SideAssignment &assignment);

using Rgb = std::array<std::uint8_t, 3>;

/// ASCII PLY, float coordinates with 17 significant digits, optional colours.
void write_ply(std::ostream &out, const PointMatrix &positions, const std::vector<TriMesh::Triangle> &triangles,
               std::span<const Rgb> colors = {});

/// Blue-white-red, symmetric about zero, saturating at |value| = limit.
Rgb diverging_color(double value, double limit);
/// Non-negative values on a dark-to-light blue ramp; negative values yellow
/// to orange, so the sign change is visible at a glance.
Rgb sign_split_color(double value, double limit);

/// Coordinate (row col value) text, one entry per line, with a size header.
void write_triplets(std::ostream &out, const SparseMatrix &matrix);

/// printf %g formatting shared by every text output; zero of either sign
/// prints as "0".
std::string format_double(double value, int significant_digits = 17);

} // namespace ribbonpatch::io
