#pragma once

#include "ribbonpatch/assembly.hpp"
#include "ribbonpatch/param.hpp"
#include "ribbonpatch/side_assignment.hpp"
#include "ribbonpatch/spline.hpp"

#include <span>
#include <string>
#include <vector>

namespace ribbonpatch {

struct PatchOptions {
  ParamOptions param;
  SystemOptions system;
  /// Allowed gap between adjacent ribbons' corner positions, relative to the
  /// bounding-box diagonal of all control points.
  double corner_tolerance = 1e-9;
};

/// Mesh, side assignment and ribbons with consistent orientation: every side's
/// parameter increases along the loop traversal direction.
struct PatchProblem {
  TriMesh mesh;
  std::vector<Ribbon> ribbons;
  std::vector<bool> reversed; ///< per side: ribbon was reversed in s
  std::vector<std::string> warnings;
};

/// Attaches the assignment to the mesh and reverses any side (its parameters
/// and its ribbon in s) whose parameter runs against the traversal direction.
/// Each reversal adds a warning.
PatchProblem prepare_problem(const TriMesh &mesh, SideAssignment assignment, std::vector<Ribbon> ribbons);

struct CornerReport {
  int vertex = -1;
  int side_in = -1;  ///< side ending at the corner
  int side_out = -1; ///< side starting at the corner
  double position_gap = 0.0;
  double derivative_gap = 0.0; ///< disagreement of the two sides' dR/dn before averaging
};

/// Samples u0 = R_i(s,0) and d0 = dR_i/dn at every boundary vertex. Corner
/// vertices average the two incident sides' values. Throws RibbonError if a
/// corner's positions disagree by more than `corner_tolerance` (absolute).
BoundaryConditions sample_boundary_conditions(const TriMesh &mesh, const SideLayout &layout,
                                              std::span<const Ribbon> ribbons, std::span<const SideParam> params,
                                              double corner_tolerance = 1e-9,
                                              std::vector<CornerReport> *corners = nullptr);

struct PatchDiagnostics {
  double solver_residual = 0.0;
  MeshQuality mesh_quality;
  std::vector<CornerReport> corners;
  /// max |u - u0| over boundary vertices (zero by construction)
  double boundary_position_error = 0.0;
  /// max |J n - d0| / max |d0| at boundary vertices, J from one-sided face
  /// gradients of the solved patch
  double normal_derivative_mismatch = 0.0;
  /// max distance to the least-squares plane, relative to the bounding-box diagonal
  double planarity = 0.0;
  double bbox_diagonal = 0.0;
  std::vector<std::string> warnings;
};

struct PatchResult {
  PointMatrix surface_positions;
  Eigen::VectorXd mean_curvature;
  Eigen::VectorXd laplacian_norm; ///< |v| per vertex, the auxiliary field
  PatchDiagnostics diagnostics;
};

/// Signed mean curvature of the lifted mesh (domain connectivity, 3D
/// positions): |L3 x| / (2 A) with the sign of the vertex normal, where L3 and
/// A are the cotangent operator and barycentric areas of the 3D mesh.
/// Boundary vertices take the mean of their interior neighbours.
Eigen::VectorXd mean_curvature(const TriMesh &domain, const PointMatrix &positions);

/// Solve for given boundary data and fill in curvature and diagnostics.
PatchResult solve_patch(const BiharmonicSystem &system, const BoundaryConditions &bc,
                        const ParamOptions &param_options = {});

struct ControlPointId {
  int side = 0;
  int row = 0;    ///< index along s
  int column = 0; ///< index along h; 0 is the boundary row
};

/// End-to-end patch construction. Holds the per-side parameterizations and the
/// factorized system so blend fields can be extracted without refactorizing.
class PatchBuilder {
public:
  PatchBuilder(PatchProblem problem, PatchOptions options = {});

  const TriMesh &mesh() const { return system_.mesh(); }
  const SideLayout &layout() const { return layout_; }
  const std::vector<Ribbon> &ribbons() const { return ribbons_; }
  const std::vector<SideParam> &params() const { return params_; }
  const BiharmonicSystem &system() const { return system_; }
  const std::vector<std::string> &warnings() const { return warnings_; }
  /// Whether side `side` was reversed by prepare_problem. Control point rows
  /// refer to the ribbon as stored here, i.e. after any reversal.
  bool side_reversed(int side) const { return reversed_[side]; }

  BoundaryConditions boundary_conditions(std::vector<CornerReport> *corners = nullptr) const;
  PatchResult build() const;

  std::vector<ControlPointId> control_points() const;

  /// Sensitivity of the patch to unit motion of one control point (any one
  /// coordinate; the response is the same scalar field for each).
  Eigen::VectorXd blend_field(const ControlPointId &id) const;
  /// Several fields at once, one column each.
  Eigen::MatrixXd blend_fields(std::span<const ControlPointId> ids) const;

private:
  std::vector<Ribbon> ribbons_;
  PatchOptions options_;
  SideLayout layout_;
  BiharmonicSystem system_;
  std::vector<SideParam> params_;
  std::vector<std::string> warnings_;
  std::vector<bool> reversed_;
  double scale_ = 1.0;
};

/// Convenience wrapper: prepare, parameterize, sample and solve.
PatchResult build_patch(const TriMesh &mesh, SideAssignment assignment, std::vector<Ribbon> ribbons,
                        const PatchOptions &options = {});

Eigen::VectorXd blend_function_field(const PatchBuilder &builder, const ControlPointId &id);

} // namespace ribbonpatch
