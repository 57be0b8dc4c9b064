#include "support.hpp"

#include "ribbonpatch/mesh_generators.hpp"

#include <doctest.h>

#include <random>

using namespace ribbonpatch;

namespace {

Eigen::MatrixXd interior_values(const TriMesh &mesh, const Eigen::MatrixXd &u) {
  Eigen::MatrixXd out(mesh.interior_vertices().size(), u.cols());
  for (size_t k = 0; k < mesh.interior_vertices().size(); ++k)
    out.row(k) = u.row(mesh.interior_vertices()[k]);
  return out;
}

std::vector<Vec2> normals_for(const TriMesh &mesh, const SystemOptions &opts) {
  return consistent_boundary_normals(mesh, opts.lumped_boundary_mass);
}

double linear_error(const TriMesh &mesh, const SystemOptions &opts, double a, double b, double c) {
  BiharmonicSystem system(mesh, opts);
  auto data = testing::scalar_data(
      mesh, normals_for(mesh, opts), [&](const Vec2 &p) { return a * p.x() + b * p.y() + c; },
      [&](const Vec2 &) { return Vec2(a, b); });
  auto sol = system.solve_columns(data.u0, data.d0);
  double err = 0.0;
  for (int v = 0; v < mesh.vertex_count(); ++v)
    err = std::max(err, std::abs(sol.u(v, 0) - (a * mesh.vertex(v).x() + b * mesh.vertex(v).y() + c)));
  return err;
}

} // namespace

TEST_SUITE("assembly") {

TEST_CASE("right-hand side matches a dense assembly") {
  std::mt19937 rng(1);
  for (const auto &[name, mesh] : testing::small_meshes()) {
    CAPTURE(name);
    BiharmonicSystem system(mesh);
    const auto nb = static_cast<Eigen::Index>(mesh.boundary_vertices().size());
    Eigen::MatrixXd u0 = Eigen::MatrixXd::Random(nb, 2), d0 = Eigen::MatrixXd::Random(nb, 2);
    Eigen::MatrixXd U = Eigen::MatrixXd::Zero(mesh.vertex_count(), 2), D = U;
    for (Eigen::Index i = 0; i < nb; ++i) {
      U.row(mesh.boundary_vertices()[i]) = u0.row(i);
      D.row(mesh.boundary_vertices()[i]) = d0.row(i);
    }
    Eigen::MatrixXd expected = -testing::dense_stiffness(mesh) * U - testing::dense_boundary_mass(mesh) * D;
    CHECK((system.assemble_rhs(u0, d0) - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("reduced solve equals the dense saddle-point solve") {
  for (bool lumped : {true, false}) {
    SystemOptions opts;
    opts.lumped_mass = lumped;
    for (const auto &[name, mesh] : testing::small_meshes()) {
      CAPTURE(name);
      CAPTURE(lumped);
      BiharmonicSystem system(mesh, opts);
      const auto nb = static_cast<Eigen::Index>(mesh.boundary_vertices().size());
      for (int trial = 0; trial < 3; ++trial) {
        BoundaryConditions bc{PointMatrix::Random(nb, 3), PointMatrix::Random(nb, 3)};
        MixedSolution fast = system.solve(bc);
        MixedSolution dense = solve_saddle_dense(system, bc);
        CHECK((fast.u - dense.u).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((fast.v - dense.v).cwiseAbs().maxCoeff() < 1e-8 * std::max(1.0, dense.v.cwiseAbs().maxCoeff()));
        CHECK(fast.residual < 1e-10);
      }
    }
  }
}

TEST_CASE("linear and constant precision") {
  std::vector<SystemOptions> variants(4);
  variants[1].lumped_mass = false;
  variants[2].lumped_boundary_mass = true;
  variants[3].solver = LinearSolver::ConjugateGradient;
  for (const auto &opts : variants)
    for (const auto &[name, mesh] : testing::small_meshes()) {
      CAPTURE(name);
      CHECK(linear_error(mesh, opts, 1.0, 0.0, 0.0) < 1e-8);
      CHECK(linear_error(mesh, opts, 0.0, 1.0, 0.0) < 1e-8);
      CHECK(linear_error(mesh, opts, -0.7, 2.1, 0.3) < 1e-8);
      CHECK(linear_error(mesh, opts, 0.0, 0.0, 1.0) < 1e-10);
    }
}

TEST_CASE("solution is linear in the boundary data") {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> unit(-2.0, 2.0);
  for (const auto &[name, mesh] : testing::small_meshes()) {
    CAPTURE(name);
    BiharmonicSystem system(mesh);
    const auto nb = static_cast<Eigen::Index>(mesh.boundary_vertices().size());
    Eigen::MatrixXd u1 = Eigen::MatrixXd::Random(nb, 1), d1 = Eigen::MatrixXd::Random(nb, 1);
    Eigen::MatrixXd u2 = Eigen::MatrixXd::Random(nb, 1), d2 = Eigen::MatrixXd::Random(nb, 1);
    double a = unit(rng), b = unit(rng);
    Eigen::MatrixXd combined = system.solve_columns(a * u1 + b * u2, a * d1 + b * d2).u;
    Eigen::MatrixXd separate = a * system.solve_columns(u1, d1).u + b * system.solve_columns(u2, d2).u;
    CHECK((combined - separate).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("mirror-symmetric data gives a mirror-symmetric solution") {
  TriMesh mesh = generators::grid_rectangle(8, -1, 0, 1, 1, generators::Diagonal::CrissCross);
  auto mirror = testing::mirror_map_x(mesh);
  BiharmonicSystem system(mesh);
  auto normals = consistent_boundary_normals(mesh);
  auto f = [](const Vec2 &p) { return std::cos(2 * p.x()) + p.y() * p.y() * p.y(); };
  auto g = [](const Vec2 &p) { return Vec2(-2 * std::sin(2 * p.x()), 3 * p.y() * p.y()); };
  auto data = testing::scalar_data(mesh, normals, f, g);
  auto u = system.solve_columns(data.u0, data.d0).u;
  for (int v = 0; v < mesh.vertex_count(); ++v)
    CHECK(u(v, 0) == doctest::Approx(u(mirror[v], 0)).epsilon(1e-9));
}

TEST_CASE("quadratic solution converges and v approximates the Laplacian") {
  double previous = 1e300;
  for (int n : {8, 16, 32}) {
    TriMesh mesh = generators::unit_square(n);
    BiharmonicSystem system(mesh);
    auto data = testing::scalar_data(
        mesh, consistent_boundary_normals(mesh), [](const Vec2 &p) { return p.squaredNorm(); },
        [](const Vec2 &p) { return Vec2(2 * p); });
    auto sol = system.solve_columns(data.u0, data.d0);
    double err = 0.0, v_err = 0.0;
    for (int v : mesh.interior_vertices()) {
      const Vec2 &p = mesh.vertex(v);
      err = std::max(err, std::abs(sol.u(v, 0) - p.squaredNorm()));
      if (p.minCoeff() > 0.25 && p.maxCoeff() < 0.75)
        v_err = std::max(v_err, std::abs(sol.v(v, 0) - 4.0));
    }
    CHECK(err < previous);
    CHECK(v_err < 1e-2);
    previous = err;
  }
}

TEST_CASE("Hermite operators") {
  for (const auto &[name, mesh] : testing::small_meshes()) {
    CAPTURE(name);
    BiharmonicSystem system(mesh);
    HermiteOperators H = system.hermite_operators();
    const auto nb = static_cast<Eigen::Index>(mesh.boundary_vertices().size());
    REQUIRE(H.H0.rows() == static_cast<Eigen::Index>(mesh.interior_vertices().size()));
    REQUIRE(H.H0.cols() == nb);

    // Columns equal individual delta solves.
    for (Eigen::Index j : {Eigen::Index(0), nb / 2, nb - 1}) {
      Eigen::MatrixXd e = Eigen::MatrixXd::Zero(nb, 1), z = e;
      e(j, 0) = 1.0;
      CHECK((interior_values(mesh, system.solve_columns(e, z).u).col(0) - H.H0.col(j)).cwiseAbs().maxCoeff() <
            1e-12);
      CHECK((interior_values(mesh, system.solve_columns(z, e).u).col(0) - H.H1.col(j)).cwiseAbs().maxCoeff() <
            1e-12);
    }
    CHECK((H.H0.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-8);

    auto normals = consistent_boundary_normals(mesh);
    Eigen::VectorXd xb(nb), nx(nb);
    for (Eigen::Index i = 0; i < nb; ++i) {
      xb[i] = mesh.vertex(mesh.boundary_vertices()[i]).x();
      nx[i] = normals[i].x();
    }
    Eigen::VectorXd x = H.H0 * xb + H.H1 * nx;
    for (size_t k = 0; k < mesh.interior_vertices().size(); ++k)
      CHECK(x[k] == doctest::Approx(mesh.vertex(mesh.interior_vertices()[k]).x()).epsilon(1e-8));
  }
}

TEST_CASE("Hermite operators have negative entries on a five-sided domain") {
  TriMesh mesh = generators::polygon_fan(generators::regular_polygon(5), Vec2::Zero(), 8);
  HermiteOperators H = BiharmonicSystem(mesh).hermite_operators();
  CHECK(std::min(H.H0.minCoeff(), H.H1.minCoeff()) < 0.0);
}

TEST_CASE("reduced operator is symmetric positive definite") {
  TriMesh mesh = testing::obtuse_mesh();
  BiharmonicSystem system(mesh);
  Eigen::MatrixXd R(system.reduced_operator());
  CHECK((R - R.transpose()).cwiseAbs().maxCoeff() < 1e-12 * R.cwiseAbs().maxCoeff());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(R);
  CHECK(eig.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("iterative and direct solvers agree") {
  TriMesh mesh = generators::square_annulus(20, 1.0, 0.4);
  SystemOptions cg;
  cg.solver = LinearSolver::ConjugateGradient;
  const auto nb = static_cast<Eigen::Index>(mesh.boundary_vertices().size());
  BoundaryConditions bc{PointMatrix::Random(nb, 3), PointMatrix::Random(nb, 3)};
  auto a = BiharmonicSystem(mesh).solve(bc);
  auto b = BiharmonicSystem(mesh, cg).solve(bc);
  CHECK((a.u - b.u).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("unreachable tolerance raises a solver error") {
  SystemOptions opts;
  opts.residual_tolerance = 1e-300;
  TriMesh mesh = generators::unit_square(6);
  BiharmonicSystem system(mesh, opts);
  const auto nb = static_cast<Eigen::Index>(mesh.boundary_vertices().size());
  CHECK_THROWS_AS(system.solve_columns(Eigen::MatrixXd::Random(nb, 1), Eigen::MatrixXd::Random(nb, 1)), SolverError);
  CHECK_THROWS_AS(system.solve_columns(Eigen::MatrixXd::Random(nb + 1, 1), Eigen::MatrixXd::Random(nb + 1, 1)),
                  Error);
}

} // TEST_SUITE
