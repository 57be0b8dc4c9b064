#pragma once

#include "ribbonpatch/mesh.hpp"
#include "ribbonpatch/side_assignment.hpp"
#include "ribbonpatch/spline.hpp"

#include <Eigen/SparseCholesky>

#include <span>

namespace ribbonpatch {

/// Dirichlet extension of s_i to the sides other than i.
enum class SExtension {
  ClampLinear, ///< adjacent sides held at the shared corner value, the rest linear in arc length
  Nearest,     ///< adjacent sides clamped, the rest take the nearer end value (0 or 1)
};

enum class GradientMethod {
  AreaWeighted,  ///< area-weighted average of all incident face gradients
  BoundaryFaces, ///< only faces owning one of the vertex's boundary edges
};

enum class NormalKind {
  Consistent, ///< consistent_boundary_normals: exact for linear data in the weak form
  Unit,       ///< inward_boundary_normals: unit angle bisector
};

struct ParamOptions {
  SExtension s_extension = SExtension::ClampLinear;
  GradientMethod gradient = GradientMethod::AreaWeighted;
  NormalKind normals = NormalKind::Consistent;
  bool lumped_boundary_mass = false; ///< must match the N used by the solver
};

/// Dirichlet solver for the cotangent Laplacian: factorizes the interior
/// block once and reuses it for every boundary data set.
class HarmonicSolver {
public:
  explicit HarmonicSolver(const TriMesh &mesh);

  /// `boundary_values` has one row per boundary vertex (boundary_vertices()
  /// order) and one column per field. Returns per-vertex values.
  Eigen::MatrixXd solve(const Eigen::MatrixXd &boundary_values) const;

private:
  const TriMesh *mesh_;
  SparseMatrix interior_block_;
  SparseMatrix coupling_; // interior rows, boundary columns
  Eigen::SimplicialLDLT<SparseMatrix> factorization_;
};

/// Discrete harmonic interpolation of boundary data (one value per boundary
/// vertex, boundary_vertices() order).
Eigen::VectorXd harmonic_field(const TriMesh &mesh, std::span<const double> boundary_values);

/// Harmonic reparameterization of one side: s_i and h_i over the mesh plus
/// their inward normal derivatives at the side's own vertices.
struct SideParam {
  int side_index = -1;
  Eigen::VectorXd s_field;
  Eigen::VectorXd h_field;
  std::vector<int> vertices; ///< side vertices ordered by s, corners included
  std::vector<double> s;     ///< assigned arc parameter at each side vertex
  std::vector<double> dn_s;
  std::vector<double> dn_h;
};

/// Boundary values of s_i and h_i (boundary_vertices() order).
///
/// h_i is 0 on side i, rises linearly (in the neighbour's own parameter) from
/// 0 to 1 along the two adjacent sides, and is 1 everywhere else, including
/// other loops. s_i follows the assigned parameter on side i and is extended
/// according to `extension`; on other loops it is 1/2.
std::pair<Eigen::VectorXd, Eigen::VectorXd> side_dirichlet_data(const TriMesh &mesh, const SideLayout &layout,
                                                                 int side, SExtension extension);

SideParam side_parameterization(const TriMesh &mesh, const SideLayout &layout, int side,
                                const ParamOptions &options = {}, const HarmonicSolver *solver = nullptr);

/// Chain rule dR/dn = dn_s * dR/ds + dn_h * dR/dh.
Vec3 normal_derivative(double dn_s, double dn_h, const Ribbon::Partials &partials);

/// Boundary normals selected by `options`, boundary_vertices() order.
std::vector<Vec2> boundary_normals(const TriMesh &mesh, const ParamOptions &options);

} // namespace ribbonpatch
