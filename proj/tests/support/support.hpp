#pragma once

// Fixtures and independent reference computations shared by the unit tests
// and the acceptance suite. Nothing here calls the library code it is used to
// check.

#include "ribbonpatch/assembly.hpp"
#include "ribbonpatch/examples.hpp"
#include "ribbonpatch/patch.hpp"

#include <Eigen/Dense>

#include <functional>
#include <random>
#include <string>
#include <vector>

namespace ribbonpatch::testing {

struct NamedMesh {
  std::string name;
  TriMesh mesh;
};

/// Small meshes (at most 200 vertices): structured and criss-cross squares, a
/// jittered square with obtuse triangles, a polygon fan, a notched pentagon
/// and a square annulus.
std::vector<NamedMesh> small_meshes();

/// Pentagon fan jittered until it has obtuse triangles.
TriMesh obtuse_mesh();

/// Stiffness from the gradient form K_ij = sum_T area_T grad(phi_i).grad(phi_j),
/// assembled densely.
Eigen::MatrixXd dense_stiffness(const TriMesh &mesh);

/// Consistent boundary mass, assembled densely from edge lengths.
Eigen::MatrixXd dense_boundary_mass(const TriMesh &mesh);

/// Bézier ribbon evaluation by repeated linear interpolation (de Casteljau),
/// first along h for every s-row, then along s.
Vec3 de_casteljau(const Ribbon::Net &net, double s, double h);

/// Cox-de Boor recursion for one basis function N_{i,p}(t) on a clamped knot
/// vector (right end included in the last span).
double cox_de_boor(const std::vector<double> &knots, int i, int p, double t);

/// Boundary data u0 = f, d0 = grad f . normal for a scalar function with
/// known gradient, one column, boundary_vertices() order.
struct ScalarData {
  Eigen::MatrixXd u0;
  Eigen::MatrixXd d0;
};
ScalarData scalar_data(const TriMesh &mesh, const std::vector<Vec2> &normals,
                       const std::function<double(const Vec2 &)> &f,
                       const std::function<Vec2(const Vec2 &)> &gradient);

/// Index map v -> w with vertex(w) the mirror image of vertex(v) under
/// x -> 2 axis - x. Throws if the mesh is not mirror symmetric.
std::vector<int> mirror_map_x(const TriMesh &mesh, double axis = 0.0, double tolerance = 1e-9);

/// Regular pentagon symmetric about x = 0 with cubic ribbons whose heights
/// and cross-derivatives respect that symmetry.
examples::ExampleInput symmetric_pentagon(int resolution);

/// Runs the full pipeline on an example.
PatchBuilder builder_for(const examples::ExampleInput &input, const PatchOptions &options = {});

/// Affine map of every control point.
std::vector<Ribbon> transform_ribbons(const std::vector<Ribbon> &ribbons, const Eigen::Matrix3d &A, const Vec3 &t);

/// Random Bézier net with coordinates in [-1, 1].
Ribbon::Net random_net(std::mt19937 &rng, int rows, int columns);

/// Boundary data sampled from the upper hemisphere z = sqrt(r^2 - x^2 - y^2):
/// positions on the sphere and its directional derivative along each normal.
BoundaryConditions sphere_conditions(const TriMesh &mesh, double radius, const std::vector<Vec2> &normals);

} // namespace ribbonpatch::testing
