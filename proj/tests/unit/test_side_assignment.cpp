#include "support.hpp"

#include "ribbonpatch/mesh_generators.hpp"

#include <doctest.h>

using namespace ribbonpatch;

namespace {

LoopCorners square_corners() { return {{0, 1, 2, 3}, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}}; }

} // namespace

TEST_SUITE("side_assignment") {

TEST_CASE("corners of the unit square give four sides with arc-length parameters") {
  TriMesh m = generators::unit_square(4);
  std::vector<LoopCorners> loops = {square_corners()};
  TriMesh sided = m.with_side_assignment(assign_sides_from_corners(m, loops));
  SideLayout layout(sided);
  REQUIRE(layout.side_count() == 4);
  CHECK(layout.all_forward());
  for (const auto &info : layout.sides()) {
    REQUIRE(info.vertices.size() == 5);
    for (size_t k = 0; k < info.params.size(); ++k)
      CHECK(info.params[k] == doctest::Approx(k / 4.0));
  }
  // Side 0 runs along y = 0 with s = x.
  for (size_t k = 0; k < 5; ++k) {
    const Vec2 &p = m.vertex(layout.side(0).vertices[k]);
    CHECK(p.y() == 0.0);
    CHECK(p.x() == doctest::Approx(layout.side(0).params[k]));
  }
  CHECK(layout.next(0) == 1);
  CHECK(layout.previous(0) == 3);

  // Corners carry 1 on the incoming side and 0 on the outgoing side.
  int corner = layout.side(1).vertices.front();
  const auto &samples = sided.side_assignment()[corner];
  REQUIRE(samples.size() == 2);
  for (const auto &s : samples)
    CHECK(s.s == (s.side == 0 ? 1.0 : 0.0));
}

TEST_CASE("clockwise corner order produces reversed sides, which prepare_problem flips") {
  TriMesh m = generators::unit_square(4);
  LoopCorners cw{{0, 1, 2, 3}, {{0, 0}, {0, 1}, {1, 1}, {1, 0}}};
  std::vector<LoopCorners> loops = {cw};
  auto assignment = assign_sides_from_corners(m, loops);
  SideLayout layout(m.with_side_assignment(assignment));
  CHECK_FALSE(layout.all_forward());

  std::vector<Ribbon> ribbons;
  for (int i = 0; i < 4; ++i)
    ribbons.push_back(Ribbon::bezier({{Vec3::Zero(), Vec3::UnitZ()}, {Vec3::Zero(), Vec3::UnitZ()}}));
  PatchProblem problem = prepare_problem(m, assignment, ribbons);
  CHECK(problem.warnings.size() == 4);
  CHECK(SideLayout(problem.mesh).all_forward());
  for (bool r : problem.reversed)
    CHECK(r);
}

TEST_CASE("two loops: annulus sides") {
  TriMesh m = generators::square_annulus(10, 1.0, 0.4);
  auto input = examples::multiply_connected(10);
  auto assignment = assign_sides_from_corners(input.mesh, input.ribbons.loops);
  SideLayout layout(m.with_side_assignment(assignment));
  CHECK(layout.side_count() == 8);
  REQUIRE(layout.loop_sides().size() == 2);
  CHECK(layout.loop_sides()[0].size() == 4);
  CHECK(layout.loop_sides()[1].size() == 4);
  CHECK(layout.all_forward());
}

TEST_CASE("invalid assignments are rejected") {
  TriMesh m = generators::unit_square(4);
  auto error_kind = [&](SideAssignment a) {
    try {
      SideLayout(m.with_side_assignment(std::move(a)));
    } catch (const MeshError &e) {
      return e.kind();
    }
    return MeshError::Kind::Parse;
  };

  std::vector<LoopCorners> loops = {square_corners()};
  auto good = assign_sides_from_corners(m, loops);

  // A boundary vertex without any side.
  auto missing = good;
  missing[m.boundary_loops()[0][1]].clear();
  CHECK(error_kind(missing) == MeshError::Kind::SideAssignment);

  // Non-monotone parameters.
  auto shuffled = good;
  for (auto &samples : shuffled)
    for (auto &s : samples)
      if (s.side == 0 && s.s > 0.2 && s.s < 0.3)
        s.s = 0.6;
  CHECK(error_kind(shuffled) == MeshError::Kind::SideAssignment);

  // A whole loop as one side.
  LoopCorners single{{0}, {{0, 0}}};
  std::vector<LoopCorners> one = {single};
  CHECK_THROWS_AS(assign_sides_from_corners(m, one), MeshError);
}

TEST_CASE("flip_side reflects parameters") {
  TriMesh m = generators::unit_square(2);
  std::vector<LoopCorners> loops = {square_corners()};
  auto a = assign_sides_from_corners(m, loops);
  auto b = a;
  flip_side(b, 2);
  for (size_t v = 0; v < a.size(); ++v)
    for (size_t k = 0; k < a[v].size(); ++k)
      CHECK(b[v][k].s == (a[v][k].side == 2 ? 1.0 - a[v][k].s : a[v][k].s));
}

} // TEST_SUITE
