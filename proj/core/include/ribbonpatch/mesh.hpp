#pragma once

#include "ribbonpatch/types.hpp"

#include <array>
#include <span>
#include <vector>

namespace ribbonpatch {

/// A boundary vertex's membership in one side: side index and its normalized
/// arc-length parameter along that side. Corner vertices carry two samples.
struct SideSample {
  int side = -1;
  double s = 0.0;
};

/// Per-vertex side membership; empty lists for interior vertices.
using SideAssignment = std::vector<std::vector<SideSample>>;

/// Indexed planar triangulation of the patch domain.
///
/// Construction validates the input (positive triangle areas, manifold edges,
/// connectivity) and extracts the boundary loops by chaining the directed
/// edges that have a single incident triangle. With counter-clockwise
/// triangles this walks the outer loop counter-clockwise and hole loops
/// clockwise: the domain is always on the left of the traversal direction.
///
/// A TriMesh is immutable after construction; `with_side_assignment` returns
/// a copy carrying the side data.
class TriMesh {
public:
  using Triangle = std::array<int, 3>;

  TriMesh(std::vector<Vec2> vertices, std::vector<Triangle> triangles);

  TriMesh with_side_assignment(SideAssignment assignment) const;

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int triangle_count() const { return static_cast<int>(triangles_.size()); }

  const std::vector<Vec2> &vertices() const { return vertices_; }
  const std::vector<Triangle> &triangles() const { return triangles_; }
  const Vec2 &vertex(int i) const { return vertices_[i]; }

  const std::vector<std::vector<int>> &boundary_loops() const { return loops_; }

  /// All boundary vertices, loop by loop, in traversal order. This is the
  /// ordering used for every per-boundary-vertex quantity in the library.
  const std::vector<int> &boundary_vertices() const { return boundary_; }
  const std::vector<int> &interior_vertices() const { return interior_; }

  /// Position of vertex `v` in boundary_vertices(), or -1 for interior vertices.
  int boundary_slot(int v) const { return boundary_slot_[v]; }
  /// Position of vertex `v` in interior_vertices(), or -1 for boundary vertices.
  int interior_slot(int v) const { return interior_slot_[v]; }
  bool is_boundary(int v) const { return boundary_slot_[v] >= 0; }

  /// Loop index and position within the loop of boundary vertex `v`.
  std::pair<int, int> loop_position(int v) const;
  /// Neighbours of boundary vertex `v` along its loop (previous, next).
  std::pair<int, int> loop_neighbors(int v) const;

  bool has_side_assignment() const { return !side_assignment_.empty(); }
  const SideAssignment &side_assignment() const { return side_assignment_; }

  double triangle_area(int t) const;
  double total_area() const;

private:
  std::vector<Vec2> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<std::vector<int>> loops_;
  std::vector<int> boundary_;
  std::vector<int> interior_;
  std::vector<int> boundary_slot_;
  std::vector<int> interior_slot_;
  std::vector<std::pair<int, int>> loop_pos_;
  SideAssignment side_assignment_;
};

/// Twice the signed area of the polygon traced by `loop`.
double signed_area(const TriMesh &mesh, std::span<const int> loop);

/// Cotangent stiffness matrix: L_ij = -1/2 (cot a_ij + cot b_ij), L_ii = -sum_j L_ij.
/// Symmetric positive semidefinite with zero row sums. Obtuse angles give
/// positive off-diagonal entries; they are not clamped.
SparseMatrix cotangent_weights(const TriMesh &mesh);

/// Diagonal barycentric mass: one third of each incident triangle's area.
SparseMatrix lumped_mass(const TriMesh &mesh);

/// Full P1 mass matrix, area/12 * [2 1 1; 1 2 1; 1 1 2] per triangle.
SparseMatrix consistent_mass(const TriMesh &mesh);

/// Integral of hat-function products over the boundary. Each boundary edge of
/// length l adds [l/3 l/6; l/6 l/3]; with `lumped` it adds l/2 to each endpoint.
SparseMatrix boundary_mass(const TriMesh &mesh, bool lumped = false);

/// Maps the three vertex values of a piecewise-linear field to its constant
/// gradient on each triangle.
class FaceGradientOperator {
public:
  explicit FaceGradientOperator(const TriMesh &mesh);

  /// Gradients of the hat functions of triangle t's corners, in corner order.
  const std::array<Vec2, 3> &hat_gradients(int t) const { return blocks_[t]; }

  std::vector<Vec2> apply(const TriMesh &mesh, std::span<const double> field) const;

private:
  std::vector<std::array<Vec2, 3>> blocks_;
};

std::vector<Vec2> face_gradients(const TriMesh &mesh, std::span<const double> field);

/// Area-weighted average of the incident face gradients at every vertex.
std::vector<Vec2> vertex_gradients(const TriMesh &mesh, std::span<const double> field);

/// Like vertex_gradients, but at boundary vertices only triangles that own one
/// of the vertex's two boundary edges contribute. Interior vertices are
/// unchanged.
std::vector<Vec2> boundary_face_gradients(const TriMesh &mesh, std::span<const double> field);

/// Unit inward normal at each boundary vertex (boundary_vertices() order): the
/// normalized average of the two incident edge normals.
std::vector<Vec2> inward_boundary_normals(const TriMesh &mesh);

/// Discrete normal n such that (N n)_i equals the boundary integral of
/// phi_i times the piecewise-constant inward edge normal. With this normal the
/// weak normal-derivative term reproduces linear functions exactly. It is a
/// unit vector on straight boundary runs (exactly so with lumped N) and shorter
/// than unit at corners.
std::vector<Vec2> consistent_boundary_normals(const TriMesh &mesh, bool lumped_n = false);

struct MeshQuality {
  double min_angle_deg = 0.0;
  double max_angle_deg = 0.0;
  int obtuse_triangles = 0;
  double min_edge = 0.0;
  double max_edge = 0.0;
};

MeshQuality mesh_quality(const TriMesh &mesh);

} // namespace ribbonpatch
