#include "ribbonpatch/examples.hpp"

#include "ribbonpatch/mesh_generators.hpp"

#include <cmath>
#include <numbers>

namespace ribbonpatch::examples {

namespace {

std::vector<double> uniform_clamped_knots(int degree, int segments) {
  std::vector<double> knots(degree + 1, 0.0);
  for (int k = 1; k < segments; ++k)
    knots.push_back(double(k) / segments);
  knots.resize(knots.size() + degree + 1, 1.0);
  return knots;
}

io::RibbonSet polygon_ribbons(const std::vector<Vec2> &corners, const std::function<double(double, double)> &height,
                              double depth, const std::function<double(int, double)> &rise, int first_side,
                              int bspline_side = -1) {
  io::RibbonSet set;
  LoopCorners loop;
  const int m = static_cast<int>(corners.size());
  for (int k = 0; k < m; ++k) {
    auto side_rise = [&rise, k](double s) { return rise(k, s); };
    set.sides.push_back(
        edge_ribbon(corners[k], corners[(k + 1) % m], height, depth, side_rise, k == bspline_side ? 2 : 1));
    loop.sides.push_back(first_side + k);
    loop.corners.push_back(corners[k]);
  }
  set.loops.push_back(std::move(loop));
  return set;
}

} // namespace

Ribbon edge_ribbon(const Vec2 &a, const Vec2 &b, const std::function<double(double, double)> &height, double depth,
                   const std::function<double(double)> &rise, int segments) {
  const int degree = 3;
  auto knots = uniform_clamped_knots(degree, segments);
  const int count = static_cast<int>(knots.size()) - degree - 1;
  Vec2 dir = (b - a).normalized();
  Vec2 inward(-dir.y(), dir.x());

  Ribbon::Net net;
  for (int i = 0; i < count; ++i) {
    double greville = (knots[i + 1] + knots[i + 2] + knots[i + 3]) / 3.0;
    Vec2 p = a + greville * (b - a);
    Vec3 boundary(p.x(), p.y(), height(p.x(), p.y()));
    Vec3 tangent = boundary + Vec3(depth * inward.x(), depth * inward.y(), rise(greville));
    net.push_back({boundary, tangent});
  }
  return Ribbon(degree, 1, std::move(knots), bezier_knots(1), std::move(net));
}

ExampleInput vertex_blend(int resolution) {
  auto corners = generators::regular_polygon(5, 1.0, std::numbers::pi / 2.0);
  TriMesh mesh = generators::polygon_fan(corners, Vec2::Zero(), resolution);
  auto height = [](double x, double y) { return 0.35 * (x * x - y * y) + 0.1 * x; };
  // Alternating steep and shallow cross-derivatives, as around a blended
  // vertex where fillets of different radii meet.
  auto rise = [](int side, double s) {
    double base = side % 2 == 0 ? 0.35 : 0.1;
    return base + 0.25 * s * (1.0 - s);
  };
  io::RibbonSet ribbons = polygon_ribbons(corners, height, 0.4, rise, 0, 2);
  return {std::move(mesh), std::move(ribbons)};
}

ExampleInput notched_pentagon(int resolution) {
  std::vector<Vec2> corners = {{0, 0}, {2, 0}, {2, 2}, {1, 0.8}, {0, 2}};
  TriMesh mesh = generators::polygon_fan(corners, Vec2(1.0, 0.5), resolution);
  io::RibbonSet ribbons = polygon_ribbons(
      corners, [](double x, double y) { return 0.2 * x * y; }, 0.4, [](int, double) { return 0.2; }, 0);
  return {std::move(mesh), std::move(ribbons)};
}

ExampleInput multiply_connected(int resolution) {
  TriMesh mesh = generators::square_annulus(resolution, 1.0, 0.4);
  auto flat = [](double, double) { return 0.0; };
  auto rim = [](double, double) { return 0.6; };

  std::vector<Vec2> outer = {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
  io::RibbonSet ribbons = polygon_ribbons(
      outer, flat, 0.3, [](int, double s) { return 0.1 + 0.2 * s * (1.0 - s); }, 0);

  // Hole corners in clockwise order: the domain lies to the left.
  std::vector<Vec2> hole = {{-0.4, -0.4}, {-0.4, 0.4}, {0.4, 0.4}, {0.4, -0.4}};
  io::RibbonSet inner = polygon_ribbons(
      hole, rim, 0.25, [](int side, double) { return side == 1 ? -0.3 : -0.2; }, 4);
  for (auto &r : inner.sides)
    ribbons.sides.push_back(std::move(r));
  ribbons.loops.push_back(std::move(inner.loops[0]));
  return {std::move(mesh), std::move(ribbons)};
}

ExampleInput flat_polygon(int sides, int resolution) {
  auto corners = generators::regular_polygon(sides);
  TriMesh mesh = generators::polygon_fan(corners, Vec2::Zero(), resolution);
  io::RibbonSet ribbons = polygon_ribbons(
      corners, [](double, double) { return 0.0; }, 0.5, [](int, double) { return 0.0; }, 0);
  return {std::move(mesh), std::move(ribbons)};
}

ExampleInput flat_square(int resolution) {
  TriMesh mesh = generators::unit_square(resolution);
  std::vector<Vec2> corners = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  io::RibbonSet ribbons = polygon_ribbons(
      corners, [](double, double) { return 0.0; }, 1.0, [](int, double) { return 0.0; }, 0);
  return {std::move(mesh), std::move(ribbons)};
}

} // namespace ribbonpatch::examples
