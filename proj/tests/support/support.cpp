#include "support.hpp"

#include "ribbonpatch/mesh_generators.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace ribbonpatch::testing {

std::vector<NamedMesh> small_meshes() {
  using namespace generators;
  std::vector<NamedMesh> meshes;
  meshes.push_back({"square-8", unit_square(8)});
  meshes.push_back({"square-crisscross-6", unit_square(6, Diagonal::CrissCross)});
  meshes.push_back({"square-jittered-10", jitter_interior(unit_square(10), 0.35, 7)});
  meshes.push_back({"pentagon-fan-6", polygon_fan(regular_polygon(5), Vec2::Zero(), 6)});
  meshes.push_back({"notched-pentagon-6", examples::notched_pentagon(6).mesh});
  meshes.push_back({"obtuse-pentagon", obtuse_mesh()});
  meshes.push_back({"annulus-10", square_annulus(10, 1.0, 0.4)});
  return meshes;
}

TriMesh obtuse_mesh() {
  auto base = generators::polygon_fan(generators::regular_polygon(5), Vec2::Zero(), 6);
  return generators::jitter_interior(base, 0.4, 3);
}

Eigen::MatrixXd dense_stiffness(const TriMesh &mesh) {
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(mesh.vertex_count(), mesh.vertex_count());
  for (const auto &t : mesh.triangles()) {
    const Vec2 &a = mesh.vertex(t[0]), &b = mesh.vertex(t[1]), &c = mesh.vertex(t[2]);
    Eigen::Matrix2d J;
    J << b - a, c - a;
    double area = 0.5 * J.determinant();
    // Reference-element gradients mapped through the inverse Jacobian.
    Eigen::Matrix<double, 2, 3> ref;
    ref << -1, 1, 0, -1, 0, 1;
    Eigen::Matrix<double, 2, 3> grad = J.transpose().inverse() * ref;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        K(t[i], t[j]) += area * grad.col(i).dot(grad.col(j));
  }
  return K;
}

Eigen::MatrixXd dense_boundary_mass(const TriMesh &mesh) {
  Eigen::MatrixXd N = Eigen::MatrixXd::Zero(mesh.vertex_count(), mesh.vertex_count());
  for (const auto &loop : mesh.boundary_loops())
    for (size_t k = 0; k < loop.size(); ++k) {
      int i = loop[k], j = loop[(k + 1) % loop.size()];
      double l = (mesh.vertex(i) - mesh.vertex(j)).norm();
      N(i, i) += l / 3;
      N(j, j) += l / 3;
      N(i, j) += l / 6;
      N(j, i) += l / 6;
    }
  return N;
}

Vec3 de_casteljau(const Ribbon::Net &net, double s, double h) {
  auto reduce = [](std::vector<Vec3> points, double t) {
    for (size_t level = points.size() - 1; level > 0; --level)
      for (size_t i = 0; i < level; ++i)
        points[i] = (1 - t) * points[i] + t * points[i + 1];
    return points[0];
  };
  std::vector<Vec3> rows;
  for (const auto &row : net)
    rows.push_back(reduce(row, h));
  return reduce(rows, s);
}

double cox_de_boor(const std::vector<double> &knots, int i, int p, double t) {
  if (p == 0) {
    const double last = knots.back();
    if (t == last) {
      // The last non-degenerate span owns the right end.
      int span = static_cast<int>(knots.size()) - 2;
      while (span > 0 && knots[span] == knots[span + 1])
        --span;
      return i == span ? 1.0 : 0.0;
    }
    return knots[i] <= t && t < knots[i + 1] ? 1.0 : 0.0;
  }
  double value = 0.0;
  double d1 = knots[i + p] - knots[i];
  double d2 = knots[i + p + 1] - knots[i + 1];
  if (d1 > 0)
    value += (t - knots[i]) / d1 * cox_de_boor(knots, i, p - 1, t);
  if (d2 > 0)
    value += (knots[i + p + 1] - t) / d2 * cox_de_boor(knots, i + 1, p - 1, t);
  return value;
}

ScalarData scalar_data(const TriMesh &mesh, const std::vector<Vec2> &normals,
                       const std::function<double(const Vec2 &)> &f,
                       const std::function<Vec2(const Vec2 &)> &gradient) {
  const auto &boundary = mesh.boundary_vertices();
  ScalarData data{Eigen::MatrixXd(boundary.size(), 1), Eigen::MatrixXd(boundary.size(), 1)};
  for (size_t i = 0; i < boundary.size(); ++i) {
    const Vec2 &p = mesh.vertex(boundary[i]);
    data.u0(i, 0) = f(p);
    data.d0(i, 0) = gradient(p).dot(normals[i]);
  }
  return data;
}

std::vector<int> mirror_map_x(const TriMesh &mesh, double axis, double tolerance) {
  auto key = [tolerance](const Vec2 &p) {
    return std::make_pair(std::llround(p.x() / tolerance), std::llround(p.y() / tolerance));
  };
  std::map<std::pair<long long, long long>, int> index;
  for (int v = 0; v < mesh.vertex_count(); ++v)
    index[key(mesh.vertex(v))] = v;
  std::vector<int> map(mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    Vec2 p = mesh.vertex(v);
    auto it = index.find(key(Vec2(2 * axis - p.x(), p.y())));
    if (it == index.end())
      throw std::runtime_error("mesh is not mirror symmetric");
    map[v] = it->second;
  }
  return map;
}

examples::ExampleInput symmetric_pentagon(int resolution) {
  auto corners = generators::regular_polygon(5, 1.0, std::numbers::pi / 2);
  examples::ExampleInput input{generators::polygon_fan(corners, Vec2::Zero(), resolution), {}};
  LoopCorners loop;
  for (int k = 0; k < 5; ++k) {
    input.ribbons.sides.push_back(examples::edge_ribbon(
        corners[k], corners[(k + 1) % 5], [](double x, double y) { return 0.3 * (x * x - y * y) + 0.2 * y; }, 0.4,
        [](double s) { return 0.2 + 0.25 * s * (1 - s); }));
    loop.sides.push_back(k);
    loop.corners.push_back(corners[k]);
  }
  input.ribbons.loops.push_back(loop);
  return input;
}

PatchBuilder builder_for(const examples::ExampleInput &input, const PatchOptions &options) {
  auto assignment = assign_sides_from_corners(input.mesh, input.ribbons.loops);
  return PatchBuilder(prepare_problem(input.mesh, std::move(assignment), input.ribbons.sides), options);
}

std::vector<Ribbon> transform_ribbons(const std::vector<Ribbon> &ribbons, const Eigen::Matrix3d &A, const Vec3 &t) {
  std::vector<Ribbon> out;
  for (const auto &r : ribbons) {
    Ribbon::Net net = r.control_net();
    for (auto &row : net)
      for (auto &p : row)
        p = A * p + t;
    out.push_back(r.with_net(std::move(net)));
  }
  return out;
}

Ribbon::Net random_net(std::mt19937 &rng, int rows, int columns) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Ribbon::Net net(rows, std::vector<Vec3>(columns));
  for (auto &row : net)
    for (auto &p : row)
      p = Vec3(unit(rng), unit(rng), unit(rng));
  return net;
}

BoundaryConditions sphere_conditions(const TriMesh &mesh, double radius, const std::vector<Vec2> &normals) {
  const auto &boundary = mesh.boundary_vertices();
  const auto nb = static_cast<Eigen::Index>(boundary.size());
  BoundaryConditions bc{PointMatrix(nb, 3), PointMatrix(nb, 3)};
  for (Eigen::Index i = 0; i < nb; ++i) {
    const Vec2 &p = mesh.vertex(boundary[i]);
    double z = std::sqrt(radius * radius - p.squaredNorm());
    const Vec2 &n = normals[i];
    bc.u0.row(i) << p.x(), p.y(), z;
    bc.d0.row(i) << n.x(), n.y(), -p.dot(n) / z;
  }
  return bc;
}

} // namespace ribbonpatch::testing
