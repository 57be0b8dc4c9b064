#pragma once

#include "ribbonpatch/mesh.hpp"

#include <memory>

namespace ribbonpatch {

enum class LinearSolver {
  Direct,            ///< sparse LDL^T of the reduced operator
  ConjugateGradient, ///< Jacobi-preconditioned CG on the reduced operator
};

struct SystemOptions {
  bool lumped_mass = true;            ///< false: consistent M, solved as a sparse saddle system
  bool lumped_boundary_mass = false;  ///< true: N lumped to l/2 per edge endpoint
  LinearSolver solver = LinearSolver::Direct;
  double cg_tolerance = 1e-12;
  double residual_tolerance = 1e-10;  ///< maximum accepted relative residual
};

/// Sampled boundary data, one row per boundary vertex (boundary_vertices()
/// order): positions u0 and inward normal derivatives d0.
struct BoundaryConditions {
  PointMatrix u0;
  PointMatrix d0;
};

/// Solution of the mixed system: u per vertex, the auxiliary v = Laplacian(u)
/// per vertex, and the relative residual of the solved linear system.
struct MixedSolution {
  Eigen::MatrixXd u;
  Eigen::MatrixXd v;
  double residual = 0.0;
};

/// Interior responses to unit boundary data. H0(:, j) is the interior field
/// for u0 = e_j, d0 = 0; H1(:, j) for u0 = 0, d0 = e_j. Rows follow
/// interior_vertices(), columns boundary_vertices().
struct HermiteOperators {
  Eigen::MatrixXd H0;
  Eigen::MatrixXd H1;
};

/// Mixed finite-element discretization of the biharmonic Dirichlet/Neumann
/// problem on a planar mesh.
///
/// With L the (positive semidefinite) cotangent stiffness, M the mass and N
/// the boundary mass, the unknowns satisfy
///
///     M v + L u = -N d0,   (L v)_i = 0 at interior i,   u_i = u0_i on the boundary,
///
/// so v approximates Laplacian(u). Eliminating v and the boundary values gives
/// the reduced interior system (L M^-1 L)_II u_I = L_I M^-1 b with
/// b = -L_{:,B} u0 - N d0. With lumped M the reduced operator is sparse and
/// factorized once at construction; with consistent M the sparse saddle
/// system is factorized instead.
class BiharmonicSystem {
public:
  explicit BiharmonicSystem(TriMesh mesh, SystemOptions options = {});
  ~BiharmonicSystem();
  BiharmonicSystem(BiharmonicSystem &&) noexcept;
  BiharmonicSystem &operator=(BiharmonicSystem &&) noexcept;

  const TriMesh &mesh() const { return mesh_; }
  const SystemOptions &options() const { return options_; }

  const SparseMatrix &stiffness() const { return L_; }
  const SparseMatrix &mass() const { return M_; }
  const SparseMatrix &boundary_mass() const { return N_; }
  /// (L M^-1 L) restricted to interior rows and columns; empty with consistent M.
  const SparseMatrix &reduced_operator() const { return reduced_; }

  /// b = -L_{:,B} u0 - N_{:,B} d0, one row per vertex, one column per coordinate.
  Eigen::MatrixXd assemble_rhs(const Eigen::MatrixXd &u0, const Eigen::MatrixXd &d0) const;
  Eigen::MatrixXd assemble_rhs(const BoundaryConditions &bc) const { return assemble_rhs(bc.u0, bc.d0); }

  /// Any number of columns; u0 and d0 have one row per boundary vertex.
  MixedSolution solve_columns(const Eigen::MatrixXd &u0, const Eigen::MatrixXd &d0) const;
  MixedSolution solve(const BoundaryConditions &bc) const { return solve_columns(bc.u0, bc.d0); }

  /// Columns of H0 and H1, all solved against the one factorization.
  HermiteOperators hermite_operators() const;

private:
  struct Factorization;

  void check_boundary_data(const Eigen::MatrixXd &u0, const Eigen::MatrixXd &d0) const;

  TriMesh mesh_;
  SystemOptions options_;
  SparseMatrix L_, M_, N_;
  SparseMatrix interior_rows_; // L restricted to interior rows, all columns
  SparseMatrix reduced_;
  Eigen::VectorXd inverse_mass_;
  std::unique_ptr<Factorization> factorization_;
};

/// Dense direct solve of the full mixed system (v and u over all vertices,
/// boundary rows of u replaced by identity constraints). Reference
/// implementation for small meshes; independent of the reduction used by
/// BiharmonicSystem::solve.
MixedSolution solve_saddle_dense(const BiharmonicSystem &system, const BoundaryConditions &bc);

} // namespace ribbonpatch
