#include "ribbonpatch/patch.hpp"

#include "ribbonpatch/parallel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace ribbonpatch {

namespace {

double control_net_diagonal(std::span<const Ribbon> ribbons) {
  Eigen::AlignedBox3d box;
  for (const auto &r : ribbons)
    for (const auto &row : r.control_net())
      for (const auto &p : row)
        box.extend(p);
  return box.isEmpty() ? 0.0 : box.diagonal().norm();
}

double points_diagonal(const PointMatrix &points) {
  if (points.rows() == 0)
    return 0.0;
  return (points.colwise().maxCoeff() - points.colwise().minCoeff()).norm();
}

} // namespace

PatchProblem prepare_problem(const TriMesh &mesh, SideAssignment assignment, std::vector<Ribbon> ribbons) {
  PatchProblem problem{mesh.with_side_assignment(assignment), {}, {}, {}};
  SideLayout layout(problem.mesh);
  if (static_cast<int>(ribbons.size()) != layout.side_count())
    throw RibbonError("expected " + std::to_string(layout.side_count()) + " ribbons, got " +
                      std::to_string(ribbons.size()));
  problem.reversed.assign(ribbons.size(), false);
  for (const auto &info : layout.sides()) {
    if (info.forward)
      continue;
    flip_side(assignment, info.side);
    ribbons[info.side] = ribbons[info.side].reversed_s();
    problem.reversed[info.side] = true;
    problem.warnings.push_back("side " + std::to_string(info.side) +
                               " runs against the boundary orientation; ribbon reversed in s");
  }
  if (!problem.warnings.empty())
    problem.mesh = mesh.with_side_assignment(std::move(assignment));
  problem.ribbons = std::move(ribbons);
  return problem;
}

BoundaryConditions sample_boundary_conditions(const TriMesh &mesh, const SideLayout &layout,
                                              std::span<const Ribbon> ribbons, std::span<const SideParam> params,
                                              double corner_tolerance, std::vector<CornerReport> *corners) {
  if (static_cast<int>(ribbons.size()) != layout.side_count() ||
      static_cast<int>(params.size()) != layout.side_count())
    throw RibbonError("need one ribbon and one parameterization per side");

  const auto nb = static_cast<Eigen::Index>(mesh.boundary_vertices().size());
  BoundaryConditions bc{PointMatrix::Zero(nb, 3), PointMatrix::Zero(nb, 3)};

  struct Sample {
    int side;
    double s;
    Vec3 position;
    Vec3 derivative;
  };
  std::vector<std::optional<Sample>> first(nb);
  std::vector<int> count(nb, 0);
  std::vector<CornerReport> reports;

  for (const auto &param : params) {
    const int side = param.side_index;
    if (side < 0 || side >= layout.side_count())
      throw RibbonError("parameterization refers to unknown side " + std::to_string(side));
    const Ribbon &ribbon = ribbons[side];
    for (size_t k = 0; k < param.vertices.size(); ++k) {
      const int v = param.vertices[k];
      const auto slot = mesh.boundary_slot(v);
      Sample sample{side, param.s[k], ribbon.eval(param.s[k], 0.0), Vec3::Zero()};
      sample.derivative = normal_derivative(param.dn_s[k], param.dn_h[k], ribbon.eval_partials(param.s[k], 0.0));

      if (first[slot]) {
        const Sample &other = *first[slot];
        CornerReport report;
        report.vertex = v;
        bool other_ends = other.s > 0.5;
        report.side_in = other_ends ? other.side : side;
        report.side_out = other_ends ? side : other.side;
        report.position_gap = (sample.position - other.position).norm();
        report.derivative_gap = (sample.derivative - other.derivative).norm();
        if (!(report.position_gap <= corner_tolerance))
          throw RibbonError("ribbons " + std::to_string(report.side_in) + " and " + std::to_string(report.side_out) +
                            " disagree at corner vertex " + std::to_string(v) + " by " +
                            std::to_string(report.position_gap));
        reports.push_back(report);
      } else {
        first[slot] = sample;
      }
      bc.u0.row(slot) += sample.position.transpose();
      bc.d0.row(slot) += sample.derivative.transpose();
      ++count[slot];
    }
  }
  for (Eigen::Index k = 0; k < nb; ++k) {
    if (count[k] == 0)
      throw RibbonError("boundary vertex " + std::to_string(mesh.boundary_vertices()[k]) + " has no side");
    bc.u0.row(k) /= count[k];
    bc.d0.row(k) /= count[k];
  }
  if (corners)
    *corners = std::move(reports);
  return bc;
}

Eigen::VectorXd mean_curvature(const TriMesh &domain, const PointMatrix &positions) {
  const int n = domain.vertex_count();
  PointMatrix lx = PointMatrix::Zero(n, 3);
  PointMatrix normal = PointMatrix::Zero(n, 3);
  Eigen::VectorXd area = Eigen::VectorXd::Zero(n);

  for (const auto &tri : domain.triangles()) {
    Vec3 p[3] = {positions.row(tri[0]).transpose(), positions.row(tri[1]).transpose(),
                 positions.row(tri[2]).transpose()};
    Vec3 face = (p[1] - p[0]).cross(p[2] - p[0]);
    double a = 0.5 * face.norm();
    if (!(a > 0.0))
      continue;
    for (int k = 0; k < 3; ++k) {
      int i = (k + 1) % 3, j = (k + 2) % 3;
      Vec3 e1 = p[i] - p[k], e2 = p[j] - p[k];
      double w = 0.5 * e1.dot(e2) / e1.cross(e2).norm();
      Vec3 diff = w * (p[i] - p[j]);
      lx.row(tri[i]) += diff.transpose();
      lx.row(tri[j]) -= diff.transpose();
      area[tri[k]] += a / 3.0;
      normal.row(tri[k]) += 0.5 * face.transpose();
    }
  }

  Eigen::VectorXd H = Eigen::VectorXd::Zero(n);
  for (int v : domain.interior_vertices()) {
    if (!(area[v] > 0.0))
      continue;
    double magnitude = lx.row(v).norm() / (2.0 * area[v]);
    H[v] = lx.row(v).dot(normal.row(v)) < 0.0 ? -magnitude : magnitude;
  }

  // Boundary rows of the operator are not a mean-curvature estimate; borrow
  // from interior neighbours instead.
  std::vector<double> sum(n, 0.0);
  std::vector<int> count(n, 0);
  for (const auto &tri : domain.triangles())
    for (int k = 0; k < 3; ++k)
      for (int j = 1; j < 3; ++j) {
        int a = tri[k], b = tri[(k + j) % 3];
        if (domain.is_boundary(a) && !domain.is_boundary(b)) {
          sum[a] += H[b];
          ++count[a];
        }
      }
  for (int v : domain.boundary_vertices())
    H[v] = count[v] > 0 ? sum[v] / count[v] : 0.0;
  return H;
}

PatchResult solve_patch(const BiharmonicSystem &system, const BoundaryConditions &bc,
                        const ParamOptions &param_options) {
  const TriMesh &mesh = system.mesh();
  MixedSolution solution = system.solve(bc);

  PatchResult result;
  result.surface_positions = solution.u;
  result.laplacian_norm = solution.v.rowwise().norm();
  result.mean_curvature = mean_curvature(mesh, result.surface_positions);

  auto &diag = result.diagnostics;
  diag.solver_residual = solution.residual;
  diag.mesh_quality = mesh_quality(mesh);
  diag.bbox_diagonal = points_diagonal(result.surface_positions);

  const auto &boundary = mesh.boundary_vertices();
  for (size_t k = 0; k < boundary.size(); ++k)
    diag.boundary_position_error = std::max(
        diag.boundary_position_error,
        (result.surface_positions.row(boundary[k]) - bc.u0.row(static_cast<Eigen::Index>(k))).norm());

  // Normal derivative of the solved patch from the faces inside the domain.
  std::vector<std::vector<Vec2>> gradients;
  for (int c = 0; c < 3; ++c) {
    Eigen::VectorXd coord = result.surface_positions.col(c);
    gradients.push_back(vertex_gradients(mesh, std::span<const double>(coord.data(), coord.size())));
  }
  auto normals = boundary_normals(mesh, param_options);
  double max_d0 = bc.d0.rows() > 0 ? bc.d0.rowwise().norm().maxCoeff() : 0.0;
  double mismatch = 0.0;
  for (size_t k = 0; k < boundary.size(); ++k) {
    Vec3 jn(gradients[0][boundary[k]].dot(normals[k]), gradients[1][boundary[k]].dot(normals[k]),
            gradients[2][boundary[k]].dot(normals[k]));
    mismatch = std::max(mismatch, (jn - bc.d0.row(static_cast<Eigen::Index>(k)).transpose()).norm());
  }
  diag.normal_derivative_mismatch = max_d0 > 0.0 ? mismatch / max_d0 : mismatch;

  if (mesh.vertex_count() >= 3 && diag.bbox_diagonal > 0.0) {
    Vec3 centroid = result.surface_positions.colwise().mean().transpose();
    PointMatrix centered = result.surface_positions.rowwise() - centroid.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(centered.transpose() * centered);
    Vec3 plane_normal = eig.eigenvectors().col(0);
    diag.planarity = (centered * plane_normal).cwiseAbs().maxCoeff() / diag.bbox_diagonal;
  }
  return result;
}

PatchBuilder::PatchBuilder(PatchProblem problem, PatchOptions options)
    : ribbons_(std::move(problem.ribbons)),
      options_(options),
      layout_(problem.mesh),
      system_(std::move(problem.mesh), options.system),
      warnings_(std::move(problem.warnings)),
      reversed_(std::move(problem.reversed)) {
  if (static_cast<int>(ribbons_.size()) != layout_.side_count())
    throw RibbonError("expected " + std::to_string(layout_.side_count()) + " ribbons, got " +
                      std::to_string(ribbons_.size()));
  if (!layout_.all_forward())
    throw RibbonError("side orientation does not follow the boundary; use prepare_problem");
  reversed_.resize(ribbons_.size(), false);

  options_.param.lumped_boundary_mass = options_.system.lumped_boundary_mass;
  scale_ = control_net_diagonal(ribbons_);

  HarmonicSolver harmonic(system_.mesh());
  params_.resize(layout_.side_count());
  parallel_for(layout_.side_count(), [&](int side) {
    params_[side] = side_parameterization(system_.mesh(), layout_, side, options_.param, &harmonic);
  });
}

BoundaryConditions PatchBuilder::boundary_conditions(std::vector<CornerReport> *corners) const {
  double tolerance = options_.corner_tolerance * (scale_ > 0.0 ? scale_ : 1.0);
  return sample_boundary_conditions(mesh(), layout_, ribbons_, params_, tolerance, corners);
}

PatchResult PatchBuilder::build() const {
  std::vector<CornerReport> corners;
  BoundaryConditions bc = boundary_conditions(&corners);
  PatchResult result = solve_patch(system_, bc, options_.param);
  result.diagnostics.corners = std::move(corners);
  result.diagnostics.warnings = warnings_;
  return result;
}

std::vector<ControlPointId> PatchBuilder::control_points() const {
  std::vector<ControlPointId> ids;
  for (int side = 0; side < static_cast<int>(ribbons_.size()); ++side)
    for (int row = 0; row < ribbons_[side].rows(); ++row)
      for (int column = 0; column < ribbons_[side].columns(); ++column)
        ids.push_back({side, row, column});
  return ids;
}

Eigen::MatrixXd PatchBuilder::blend_fields(std::span<const ControlPointId> ids) const {
  const TriMesh &m = mesh();
  const auto nb = static_cast<Eigen::Index>(m.boundary_vertices().size());
  const auto k = static_cast<Eigen::Index>(ids.size());
  Eigen::MatrixXd u0 = Eigen::MatrixXd::Zero(nb, k), d0 = Eigen::MatrixXd::Zero(nb, k);

  Eigen::VectorXd sides_at = Eigen::VectorXd::Zero(nb);
  for (const auto &param : params_)
    for (int v : param.vertices)
      sides_at[m.boundary_slot(v)] += 1.0;

  for (Eigen::Index j = 0; j < k; ++j) {
    const auto &id = ids[j];
    if (id.side < 0 || id.side >= static_cast<int>(ribbons_.size()) || id.row < 0 ||
        id.row >= ribbons_[id.side].rows() || id.column < 0 || id.column >= ribbons_[id.side].columns())
      throw std::out_of_range("control point (" + std::to_string(id.side) + "," + std::to_string(id.row) + "," +
                              std::to_string(id.column) + ") is out of range");
    const Ribbon &base = ribbons_[id.side];
    Ribbon::Net net(base.rows(), std::vector<Vec3>(base.columns(), Vec3::Zero()));
    net[id.row][id.column] = Vec3::UnitX();
    Ribbon unit = base.with_net(std::move(net));

    const SideParam &param = params_[id.side];
    for (size_t q = 0; q < param.vertices.size(); ++q) {
      const auto slot = m.boundary_slot(param.vertices[q]);
      u0(slot, j) += unit.eval(param.s[q], 0.0).x();
      d0(slot, j) += normal_derivative(param.dn_s[q], param.dn_h[q], unit.eval_partials(param.s[q], 0.0)).x();
    }
  }
  u0.array().colwise() /= sides_at.array();
  d0.array().colwise() /= sides_at.array();
  return system_.solve_columns(u0, d0).u;
}

Eigen::VectorXd PatchBuilder::blend_field(const ControlPointId &id) const {
  return blend_fields(std::span<const ControlPointId>(&id, 1)).col(0);
}

PatchResult build_patch(const TriMesh &mesh, SideAssignment assignment, std::vector<Ribbon> ribbons,
                        const PatchOptions &options) {
  return PatchBuilder(prepare_problem(mesh, std::move(assignment), std::move(ribbons)), options).build();
}

Eigen::VectorXd blend_function_field(const PatchBuilder &builder, const ControlPointId &id) {
  return builder.blend_field(id);
}

} // namespace ribbonpatch
