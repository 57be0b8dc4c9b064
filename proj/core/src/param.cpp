#include "ribbonpatch/param.hpp"

#include <cmath>
#include <string>

namespace ribbonpatch {

namespace {

// Rows restricted to `rows`, columns to `cols` (both given as vertex lists).
SparseMatrix extract_block(const SparseMatrix &A, const std::vector<int> &rows, const std::vector<int> &cols,
                           int n) {
  std::vector<int> row_slot(n, -1), col_slot(n, -1);
  for (size_t k = 0; k < rows.size(); ++k)
    row_slot[rows[k]] = static_cast<int>(k);
  for (size_t k = 0; k < cols.size(); ++k)
    col_slot[cols[k]] = static_cast<int>(k);
  std::vector<Eigen::Triplet<double>> entries;
  for (int c = 0; c < A.outerSize(); ++c) {
    if (col_slot[c] < 0)
      continue;
    for (SparseMatrix::InnerIterator it(A, c); it; ++it)
      if (row_slot[it.row()] >= 0)
        entries.emplace_back(row_slot[it.row()], col_slot[c], it.value());
  }
  SparseMatrix B(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  B.setFromTriplets(entries.begin(), entries.end());
  return B;
}

double side_length(const TriMesh &mesh, const SideInfo &info) {
  double l = 0.0;
  for (size_t j = 1; j < info.vertices.size(); ++j)
    l += (mesh.vertex(info.vertices[j]) - mesh.vertex(info.vertices[j - 1])).norm();
  return l;
}

} // namespace

HarmonicSolver::HarmonicSolver(const TriMesh &mesh) : mesh_(&mesh) {
  if (mesh.interior_vertices().empty())
    return;
  SparseMatrix L = cotangent_weights(mesh);
  interior_block_ = extract_block(L, mesh.interior_vertices(), mesh.interior_vertices(), mesh.vertex_count());
  coupling_ = extract_block(L, mesh.interior_vertices(), mesh.boundary_vertices(), mesh.vertex_count());
  factorization_.compute(interior_block_);
  if (factorization_.info() != Eigen::Success)
    throw SolverError("factorization of the interior Laplacian failed", std::nan(""));
}

Eigen::MatrixXd HarmonicSolver::solve(const Eigen::MatrixXd &boundary_values) const {
  const auto &boundary = mesh_->boundary_vertices();
  const auto &interior = mesh_->interior_vertices();
  if (boundary_values.rows() != static_cast<Eigen::Index>(boundary.size()))
    throw Error("harmonic_field: expected one value per boundary vertex");

  Eigen::MatrixXd result(mesh_->vertex_count(), boundary_values.cols());
  for (size_t k = 0; k < boundary.size(); ++k)
    result.row(boundary[k]) = boundary_values.row(k);
  if (interior.empty())
    return result;

  Eigen::MatrixXd rhs = -(coupling_ * boundary_values);
  Eigen::MatrixXd u = factorization_.solve(rhs);
  double scale = std::max(rhs.norm(), boundary_values.norm());
  double residual = (interior_block_ * u - rhs).norm() / (scale > 0.0 ? scale : 1.0);
  if (factorization_.info() != Eigen::Success || !(residual <= 1e-10))
    throw SolverError("harmonic solve failed, relative residual " + std::to_string(residual), residual);
  for (size_t k = 0; k < interior.size(); ++k)
    result.row(interior[k]) = u.row(k);
  return result;
}

Eigen::VectorXd harmonic_field(const TriMesh &mesh, std::span<const double> boundary_values) {
  HarmonicSolver solver(mesh);
  Eigen::Map<const Eigen::VectorXd> values(boundary_values.data(), static_cast<Eigen::Index>(boundary_values.size()));
  return solver.solve(values);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> side_dirichlet_data(const TriMesh &mesh, const SideLayout &layout,
                                                                 int side, SExtension extension) {
  if (side < 0 || side >= layout.side_count())
    throw Error("side index " + std::to_string(side) + " out of range");
  if (!layout.all_forward())
    throw Error("side parameters must increase along the loop traversal direction");

  const int nb = static_cast<int>(mesh.boundary_vertices().size());
  Eigen::VectorXd s = Eigen::VectorXd::Constant(nb, 0.5);
  Eigen::VectorXd h = Eigen::VectorXd::Ones(nb);
  auto set = [&](int v, double sv, double hv) {
    int k = mesh.boundary_slot(v);
    s[k] = sv;
    h[k] = hv;
  };

  // Sides of this loop starting from `side`, in traversal order.
  const auto &loop = layout.loop_sides()[layout.side(side).loop];
  const int m = static_cast<int>(loop.size());
  int offset = 0;
  while (loop[offset] != side)
    ++offset;
  auto nth = [&](int j) -> const SideInfo & { return layout.side(loop[(offset + j) % m]); };

  // Remaining sides: arc-length fraction along the path from the end of the
  // next side to the start of the previous one.
  if (m >= 4) {
    double total = 0.0;
    for (int j = 2; j <= m - 2; ++j)
      total += side_length(mesh, nth(j));
    double before = 0.0;
    for (int j = 2; j <= m - 2; ++j) {
      const auto &info = nth(j);
      double arc = 0.0;
      for (size_t k = 0; k < info.vertices.size(); ++k) {
        if (k > 0)
          arc += (mesh.vertex(info.vertices[k]) - mesh.vertex(info.vertices[k - 1])).norm();
        double t = (before + arc) / total;
        double value = 1.0 - t;
        if (extension == SExtension::Nearest)
          value = t < 0.5 ? 1.0 : (t > 0.5 ? 0.0 : 0.5);
        set(info.vertices[k], value, 1.0);
      }
      before += arc;
    }
  }

  if (m == 2) {
    const auto &other = nth(1);
    for (size_t k = 0; k < other.vertices.size(); ++k) {
      double p = other.params[k];
      set(other.vertices[k], 1.0 - p, 1.0 - std::abs(1.0 - 2.0 * p));
    }
  } else {
    const auto &next = nth(1);
    const auto &prev = nth(m - 1);
    for (size_t k = 0; k < prev.vertices.size(); ++k)
      set(prev.vertices[k], 0.0, 1.0 - prev.params[k]);
    for (size_t k = 0; k < next.vertices.size(); ++k)
      set(next.vertices[k], 1.0, next.params[k]);
    // Three sides: the far corner sits between the clamped 1 and 0.
    if (m == 3)
      s[mesh.boundary_slot(next.vertices.back())] = 0.5;
  }

  const auto &own = layout.side(side);
  for (size_t k = 0; k < own.vertices.size(); ++k)
    set(own.vertices[k], own.params[k], 0.0);
  return {s, h};
}

std::vector<Vec2> boundary_normals(const TriMesh &mesh, const ParamOptions &options) {
  return options.normals == NormalKind::Consistent ? consistent_boundary_normals(mesh, options.lumped_boundary_mass)
                                                   : inward_boundary_normals(mesh);
}

SideParam side_parameterization(const TriMesh &mesh, const SideLayout &layout, int side,
                                const ParamOptions &options, const HarmonicSolver *solver) {
  auto [s_data, h_data] = side_dirichlet_data(mesh, layout, side, options.s_extension);

  Eigen::MatrixXd data(s_data.size(), 2);
  data.col(0) = s_data;
  data.col(1) = h_data;
  Eigen::MatrixXd fields;
  if (solver) {
    fields = solver->solve(data);
  } else {
    HarmonicSolver local(mesh);
    fields = local.solve(data);
  }

  SideParam param;
  param.side_index = side;
  param.s_field = fields.col(0);
  param.h_field = fields.col(1);

  auto gradients = [&](const Eigen::VectorXd &f) {
    std::span<const double> view(f.data(), static_cast<size_t>(f.size()));
    return options.gradient == GradientMethod::AreaWeighted ? vertex_gradients(mesh, view)
                                                            : boundary_face_gradients(mesh, view);
  };
  auto grad_s = gradients(param.s_field);
  auto grad_h = gradients(param.h_field);
  auto normals = boundary_normals(mesh, options);

  const auto &info = layout.side(side);
  param.vertices = info.vertices;
  param.s = info.params;
  for (int v : info.vertices) {
    const Vec2 &n = normals[mesh.boundary_slot(v)];
    param.dn_s.push_back(grad_s[v].dot(n));
    param.dn_h.push_back(grad_h[v].dot(n));
  }
  return param;
}

Vec3 normal_derivative(double dn_s, double dn_h, const Ribbon::Partials &partials) {
  return dn_s * partials.ds + dn_h * partials.dh;
}

} // namespace ribbonpatch
