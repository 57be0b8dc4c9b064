#include "support.hpp"

#include "ribbonpatch/mesh_generators.hpp"

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include <cmath>

using namespace ribbonpatch;

namespace {

TriMesh right_triangle() { return TriMesh({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}}); }

MeshError::Kind error_kind(const std::function<void()> &f) {
  try {
    f();
  } catch (const MeshError &e) {
    return e.kind();
  }
  FAIL("no MeshError thrown");
  return MeshError::Kind::Parse;
}

} // namespace

TEST_SUITE("mesh") {

TEST_CASE("single triangle has one loop of three vertices") {
  TriMesh m = right_triangle();
  REQUIRE(m.boundary_loops().size() == 1);
  CHECK(m.boundary_loops()[0].size() == 3);
  CHECK(m.interior_vertices().empty());
  CHECK(signed_area(m, m.boundary_loops()[0]) > 0);
}

TEST_CASE("square split by a diagonal has one loop of four vertices") {
  TriMesh m({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}, {0, 2, 3}});
  REQUIRE(m.boundary_loops().size() == 1);
  CHECK(m.boundary_loops()[0].size() == 4);
  CHECK(m.total_area() == doctest::Approx(1.0));
}

TEST_CASE("hand-built square annulus: outer loop counter-clockwise, hole clockwise") {
  // Outer square 0..3, inner square 4..7, eight triangles in the ring.
  std::vector<Vec2> v = {{0, 0}, {3, 0}, {3, 3}, {0, 3}, {1, 1}, {2, 1}, {2, 2}, {1, 2}};
  std::vector<TriMesh::Triangle> t = {{0, 1, 5}, {0, 5, 4}, {1, 2, 6}, {1, 6, 5},
                                      {2, 3, 7}, {2, 7, 6}, {3, 0, 4}, {3, 4, 7}};
  TriMesh m(v, t);
  REQUIRE(m.boundary_loops().size() == 2);
  CHECK(signed_area(m, m.boundary_loops()[0]) == doctest::Approx(2 * 9.0));
  CHECK(signed_area(m, m.boundary_loops()[1]) == doctest::Approx(-2 * 1.0));
  CHECK(m.total_area() == doctest::Approx(8.0));
}

TEST_CASE("generated annulus matches the hand-built orientation") {
  TriMesh m = generators::square_annulus(10, 1.0, 0.4);
  REQUIRE(m.boundary_loops().size() == 2);
  CHECK(signed_area(m, m.boundary_loops()[0]) == doctest::Approx(8.0));
  CHECK(signed_area(m, m.boundary_loops()[1]) == doctest::Approx(-2 * 0.64));
}

TEST_CASE("invalid meshes raise distinct errors") {
  CHECK(error_kind([] { TriMesh({{0, 0}, {1, 0}, {2, 0}}, {{0, 1, 2}}); }) == MeshError::Kind::DegenerateTriangle);
  CHECK(error_kind([] { TriMesh({{0, 0}, {1, 0}, {0, 1}}, {{0, 2, 1}}); }) == MeshError::Kind::DegenerateTriangle);
  CHECK(error_kind([] {
          TriMesh({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0, -1}, {0.5, -2}}, {{0, 1, 2}, {1, 3, 2}, {0, 4, 1}, {0, 5, 1}});
        }) == MeshError::Kind::NonManifoldEdge);
  CHECK(error_kind([] {
          TriMesh({{0, 0}, {1, 0}, {0, 1}, {5, 5}, {6, 5}, {5, 6}}, {{0, 1, 2}, {3, 4, 5}});
        }) == MeshError::Kind::Disconnected);
  CHECK(std::string(MeshError::kind_name(MeshError::Kind::NonManifoldEdge)) == "non_manifold_edge");
}

TEST_CASE("cotangent weights of the right isosceles triangle") {
  Eigen::MatrixXd L(cotangent_weights(right_triangle()));
  CHECK(L(1, 2) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(L(0, 1) == doctest::Approx(-0.5));
  CHECK(L(0, 2) == doctest::Approx(-0.5));
  CHECK(L(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("cotangent matrix equals the gradient-form stiffness, is symmetric PSD with zero row sums") {
  for (const auto &[name, mesh] : testing::small_meshes()) {
    CAPTURE(name);
    Eigen::MatrixXd L(cotangent_weights(mesh));
    Eigen::MatrixXd K = testing::dense_stiffness(mesh);
    CHECK((L - K).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((L - L.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(L.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(L);
    CHECK(eig.eigenvalues().minCoeff() > -1e-12);
  }
}

TEST_CASE("obtuse triangles give positive off-diagonal weights") {
  TriMesh m({{0, 0}, {2, 0}, {1, 0.2}}, {{0, 1, 2}});
  Eigen::MatrixXd L(cotangent_weights(m));
  CHECK(L(0, 1) > 0.0);
  CHECK(mesh_quality(m).obtuse_triangles == 1);
}

TEST_CASE("mass matrices") {
  TriMesh t = right_triangle();
  Eigen::MatrixXd M(consistent_mass(t));
  CHECK(M(0, 0) == doctest::Approx(0.5 / 6));
  CHECK(M(0, 1) == doctest::Approx(0.5 / 12));
  Eigen::MatrixXd Ml(lumped_mass(t));
  CHECK(Ml(1, 1) == doctest::Approx(0.5 / 3));
  CHECK(Ml(0, 1) == 0.0);

  for (const auto &[name, mesh] : testing::small_meshes()) {
    CAPTURE(name);
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(mesh.vertex_count());
    CHECK(ones.dot(consistent_mass(mesh) * ones) == doctest::Approx(mesh.total_area()));
    CHECK(ones.dot(lumped_mass(mesh) * ones) == doctest::Approx(mesh.total_area()));
    Eigen::MatrixXd N(boundary_mass(mesh));
    CHECK((N - testing::dense_boundary_mass(mesh)).cwiseAbs().maxCoeff() < 1e-14);
    Eigen::MatrixXd Nl(boundary_mass(mesh, true));
    CHECK(ones.dot(Nl * ones) == doctest::Approx(ones.dot(N * ones)));
    CHECK((Nl - Eigen::MatrixXd(Nl.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("face gradients are exact for linear functions") {
  for (const auto &[name, mesh] : testing::small_meshes()) {
    CAPTURE(name);
    std::vector<double> f;
    for (const auto &p : mesh.vertices())
      f.push_back(0.7 * p.x() - 1.3 * p.y() + 2.0);
    for (const auto &g : face_gradients(mesh, f))
      CHECK((g - Vec2(0.7, -1.3)).norm() < 1e-12);
    for (const auto &g : vertex_gradients(mesh, f))
      CHECK((g - Vec2(0.7, -1.3)).norm() < 1e-12);
    for (const auto &g : boundary_face_gradients(mesh, f))
      CHECK((g - Vec2(0.7, -1.3)).norm() < 1e-12);
  }
}

TEST_CASE("boundary normals point inward") {
  TriMesh m = generators::unit_square(4);
  auto unit = inward_boundary_normals(m);
  auto consistent = consistent_boundary_normals(m);
  auto lumped = consistent_boundary_normals(m, true);
  const auto &boundary = m.boundary_vertices();
  for (size_t i = 0; i < boundary.size(); ++i) {
    const Vec2 &p = m.vertex(boundary[i]);
    CHECK(unit[i].norm() == doctest::Approx(1.0));
    CHECK(unit[i].dot(Vec2(0.5, 0.5) - p) > 0);
    CHECK(consistent[i].dot(Vec2(0.5, 0.5) - p) > 0);
    bool corner = (p.x() == 0 || p.x() == 1) && (p.y() == 0 || p.y() == 1);
    if (corner) {
      CHECK((unit[i] - (Vec2(0.5, 0.5) - p).normalized()).norm() < 1e-12);
      CHECK(lumped[i].norm() == doctest::Approx(std::sqrt(0.5)));
    } else {
      CHECK(lumped[i].norm() == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("consistent normals reproduce the boundary integral of the edge normals") {
  for (const auto &[name, mesh] : testing::small_meshes()) {
    CAPTURE(name);
    auto n = consistent_boundary_normals(mesh);
    Eigen::MatrixXd N = testing::dense_boundary_mass(mesh);
    Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(mesh.vertex_count(), 2);
    for (size_t i = 0; i < n.size(); ++i)
      lhs.row(mesh.boundary_vertices()[i]) = n[i].transpose();
    lhs = N * lhs;
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(mesh.vertex_count(), 2);
    for (const auto &loop : mesh.boundary_loops())
      for (size_t k = 0; k < loop.size(); ++k) {
        int a = loop[k], b = loop[(k + 1) % loop.size()];
        Vec2 e = mesh.vertex(b) - mesh.vertex(a);
        Vec2 inward(-e.y(), e.x()); // length |e|, so half goes to each end
        rhs.row(a) += 0.5 * inward.transpose();
        rhs.row(b) += 0.5 * inward.transpose();
      }
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("mesh quality of the right isosceles triangle") {
  auto q = mesh_quality(right_triangle());
  CHECK(q.min_angle_deg == doctest::Approx(45.0));
  CHECK(q.max_angle_deg == doctest::Approx(90.0));
  CHECK(q.obtuse_triangles == 0);
  CHECK(q.min_edge == doctest::Approx(1.0));
  CHECK(q.max_edge == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("obtuse fixture really is obtuse") { CHECK(mesh_quality(testing::obtuse_mesh()).obtuse_triangles > 0); }

TEST_CASE("loop queries") {
  TriMesh m = generators::unit_square(3);
  const auto &loop = m.boundary_loops()[0];
  for (size_t k = 0; k < loop.size(); ++k) {
    auto [prev, next] = m.loop_neighbors(loop[k]);
    CHECK(prev == loop[(k + loop.size() - 1) % loop.size()]);
    CHECK(next == loop[(k + 1) % loop.size()]);
    CHECK(m.loop_position(loop[k]) == std::pair<int, int>(0, static_cast<int>(k)));
  }
  for (int v : m.interior_vertices())
    CHECK_FALSE(m.is_boundary(v));
  CHECK(m.interior_vertices().size() + m.boundary_vertices().size() == size_t(m.vertex_count()));
}

} // TEST_SUITE
