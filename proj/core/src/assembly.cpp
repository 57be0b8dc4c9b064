#include "ribbonpatch/assembly.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <cmath>
#include <string>

namespace ribbonpatch {

struct BiharmonicSystem::Factorization {
  Eigen::SimplicialLDLT<SparseMatrix> direct;
  Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper, Eigen::DiagonalPreconditioner<double>> cg;
  Eigen::SparseLU<SparseMatrix> saddle;
  SparseMatrix saddle_matrix;
};

namespace {

// Selection of the given rows of A (all columns).
SparseMatrix select_rows(const SparseMatrix &A, const std::vector<int> &rows) {
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(rows.size());
  for (size_t k = 0; k < rows.size(); ++k)
    entries.emplace_back(static_cast<int>(k), rows[k], 1.0);
  SparseMatrix P(static_cast<Eigen::Index>(rows.size()), A.rows());
  P.setFromTriplets(entries.begin(), entries.end());
  return P * A;
}

// Scatters per-boundary-vertex rows into a per-vertex matrix.
Eigen::MatrixXd expand_boundary(const TriMesh &mesh, const Eigen::MatrixXd &values) {
  Eigen::MatrixXd full = Eigen::MatrixXd::Zero(mesh.vertex_count(), values.cols());
  const auto &boundary = mesh.boundary_vertices();
  for (size_t k = 0; k < boundary.size(); ++k)
    full.row(boundary[k]) = values.row(k);
  return full;
}

double relative_residual(double residual_norm, double rhs_norm) {
  return rhs_norm > 0.0 ? residual_norm / rhs_norm : residual_norm;
}

} // namespace

BiharmonicSystem::BiharmonicSystem(TriMesh mesh, SystemOptions options)
    : mesh_(std::move(mesh)), options_(options), factorization_(std::make_unique<Factorization>()) {
  L_ = cotangent_weights(mesh_);
  M_ = options_.lumped_mass ? lumped_mass(mesh_) : consistent_mass(mesh_);
  N_ = ribbonpatch::boundary_mass(mesh_, options_.lumped_boundary_mass);

  const auto &interior = mesh_.interior_vertices();
  if (interior.empty())
    return;
  interior_rows_ = select_rows(L_, interior);

  if (options_.lumped_mass) {
    inverse_mass_ = M_.diagonal().cwiseInverse();
    SparseMatrix scaled = interior_rows_ * inverse_mass_.asDiagonal();
    reduced_ = SparseMatrix(scaled * SparseMatrix(interior_rows_.transpose()));
    if (options_.solver == LinearSolver::Direct) {
      factorization_->direct.compute(reduced_);
      if (factorization_->direct.info() != Eigen::Success)
        throw SolverError("factorization of the reduced biharmonic operator failed", std::nan(""));
    } else {
      factorization_->cg.setTolerance(options_.cg_tolerance);
      factorization_->cg.setMaxIterations(10 * static_cast<Eigen::Index>(interior.size()));
      factorization_->cg.compute(reduced_);
    }
  } else {
    // [M  L_{:,I}; L_{I,:}  0]
    const int n = mesh_.vertex_count();
    const int ni = static_cast<int>(interior.size());
    std::vector<Eigen::Triplet<double>> entries;
    for (int c = 0; c < M_.outerSize(); ++c)
      for (SparseMatrix::InnerIterator it(M_, c); it; ++it)
        entries.emplace_back(static_cast<int>(it.row()), c, it.value());
    for (int c = 0; c < interior_rows_.outerSize(); ++c)
      for (SparseMatrix::InnerIterator it(interior_rows_, c); it; ++it) {
        entries.emplace_back(n + static_cast<int>(it.row()), c, it.value());
        entries.emplace_back(c, n + static_cast<int>(it.row()), it.value());
      }
    auto &S = factorization_->saddle_matrix;
    S.resize(n + ni, n + ni);
    S.setFromTriplets(entries.begin(), entries.end());
    S.makeCompressed();
    factorization_->saddle.analyzePattern(S);
    factorization_->saddle.factorize(S);
    if (factorization_->saddle.info() != Eigen::Success)
      throw SolverError("factorization of the mixed saddle system failed", std::nan(""));
  }
}

BiharmonicSystem::~BiharmonicSystem() = default;
BiharmonicSystem::BiharmonicSystem(BiharmonicSystem &&) noexcept = default;
BiharmonicSystem &BiharmonicSystem::operator=(BiharmonicSystem &&) noexcept = default;

void BiharmonicSystem::check_boundary_data(const Eigen::MatrixXd &u0, const Eigen::MatrixXd &d0) const {
  const auto nb = static_cast<Eigen::Index>(mesh_.boundary_vertices().size());
  if (u0.rows() != nb || d0.rows() != nb || u0.cols() != d0.cols())
    throw Error("boundary conditions: expected " + std::to_string(nb) + " rows in u0 and d0 with equal columns");
  if (!u0.allFinite() || !d0.allFinite())
    throw Error("boundary conditions contain non-finite values");
}

Eigen::MatrixXd BiharmonicSystem::assemble_rhs(const Eigen::MatrixXd &u0, const Eigen::MatrixXd &d0) const {
  check_boundary_data(u0, d0);
  return -(L_ * expand_boundary(mesh_, u0)) - N_ * expand_boundary(mesh_, d0);
}

MixedSolution BiharmonicSystem::solve_columns(const Eigen::MatrixXd &u0, const Eigen::MatrixXd &d0) const {
  Eigen::MatrixXd b = assemble_rhs(u0, d0);
  const auto &interior = mesh_.interior_vertices();
  const auto &boundary = mesh_.boundary_vertices();

  MixedSolution result;
  result.u.resize(mesh_.vertex_count(), u0.cols());
  for (size_t k = 0; k < boundary.size(); ++k)
    result.u.row(boundary[k]) = u0.row(k);

  if (interior.empty()) {
    result.v = options_.lumped_mass ? Eigen::MatrixXd(M_.diagonal().cwiseInverse().asDiagonal() * b)
                                    : Eigen::MatrixXd(Eigen::MatrixXd(M_).ldlt().solve(b));
    return result;
  }

  Eigen::MatrixXd u_interior;
  if (options_.lumped_mass) {
    Eigen::MatrixXd rhs = interior_rows_ * (inverse_mass_.asDiagonal() * b);
    if (options_.solver == LinearSolver::Direct) {
      u_interior = factorization_->direct.solve(rhs);
    } else {
      u_interior.resize(rhs.rows(), rhs.cols());
      for (Eigen::Index c = 0; c < rhs.cols(); ++c)
        u_interior.col(c) = factorization_->cg.solve(rhs.col(c));
    }
    result.residual = relative_residual((reduced_ * u_interior - rhs).norm(), rhs.norm());
    Eigen::MatrixXd lu = SparseMatrix(interior_rows_.transpose()) * u_interior;
    result.v = inverse_mass_.asDiagonal() * (b - lu);
  } else {
    const int n = mesh_.vertex_count();
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n + static_cast<Eigen::Index>(interior.size()), b.cols());
    rhs.topRows(n) = b;
    Eigen::MatrixXd x = factorization_->saddle.solve(rhs);
    result.residual = relative_residual((factorization_->saddle_matrix * x - rhs).norm(), rhs.norm());
    result.v = x.topRows(n);
    u_interior = x.bottomRows(static_cast<Eigen::Index>(interior.size()));
  }

  if (!(result.residual <= options_.residual_tolerance))
    throw SolverError("biharmonic solve did not reach the residual tolerance (relative residual " +
                          std::to_string(result.residual) + ")",
                      result.residual);
  for (size_t k = 0; k < interior.size(); ++k)
    result.u.row(interior[k]) = u_interior.row(k);
  return result;
}

HermiteOperators BiharmonicSystem::hermite_operators() const {
  const auto nb = static_cast<Eigen::Index>(mesh_.boundary_vertices().size());
  const auto &interior = mesh_.interior_vertices();
  Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(nb, nb);
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(nb, nb);

  auto interior_part = [&](const MixedSolution &s) {
    Eigen::MatrixXd h(static_cast<Eigen::Index>(interior.size()), nb);
    for (size_t k = 0; k < interior.size(); ++k)
      h.row(static_cast<Eigen::Index>(k)) = s.u.row(interior[k]);
    return h;
  };
  return {interior_part(solve_columns(identity, zero)), interior_part(solve_columns(zero, identity))};
}

MixedSolution solve_saddle_dense(const BiharmonicSystem &system, const BoundaryConditions &bc) {
  const TriMesh &mesh = system.mesh();
  const int n = mesh.vertex_count();
  const auto nb = static_cast<Eigen::Index>(mesh.boundary_vertices().size());
  if (bc.u0.rows() != nb || bc.d0.rows() != nb)
    throw Error("boundary conditions do not match the mesh");

  Eigen::MatrixXd L(system.stiffness());
  Eigen::MatrixXd M(system.mass());
  Eigen::MatrixXd N(system.boundary_mass());

  Eigen::MatrixXd u0 = Eigen::MatrixXd::Zero(n, 3), d0 = Eigen::MatrixXd::Zero(n, 3);
  for (Eigen::Index k = 0; k < nb; ++k) {
    u0.row(mesh.boundary_vertices()[k]) = bc.u0.row(k);
    d0.row(mesh.boundary_vertices()[k]) = bc.d0.row(k);
  }

  // Unknowns [v; u]. Rows 0..n-1: M v + L u = -N d0. Rows n..2n-1: (L v)_i = 0
  // for interior i, u_i = u0_i for boundary i.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(2 * n, 3);
  A.topLeftCorner(n, n) = M;
  A.topRightCorner(n, n) = L;
  rhs.topRows(n) = -N * d0;
  for (int i = 0; i < n; ++i) {
    if (mesh.is_boundary(i)) {
      A(n + i, n + i) = 1.0;
      rhs.row(n + i) = u0.row(i);
    } else {
      A.block(n + i, 0, 1, n) = L.row(i);
    }
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible())
    throw SolverError("dense mixed system is singular", std::nan(""));
  Eigen::MatrixXd x = lu.solve(rhs);

  MixedSolution result;
  result.v = x.topRows(n);
  result.u = x.bottomRows(n);
  double scale = rhs.norm();
  result.residual = relative_residual((A * x - rhs).norm(), scale);
  return result;
}

} // namespace ribbonpatch
