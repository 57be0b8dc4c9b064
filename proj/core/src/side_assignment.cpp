#include "ribbonpatch/side_assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ribbonpatch {

namespace {

MeshError side_error(const std::string &message) { return MeshError(MeshError::Kind::SideAssignment, message); }

constexpr double kCornerTolerance = 1e-12;

// A corner must lie within half a boundary edge of the vertex it snaps to.
bool near_vertex(const TriMesh &mesh, int v, const Vec2 &corner) {
  auto [loop_id, pos] = mesh.loop_position(v);
  const auto &loop = mesh.boundary_loops()[loop_id];
  const int len = static_cast<int>(loop.size());
  double prev = (mesh.vertex(loop[(pos + len - 1) % len]) - mesh.vertex(v)).norm();
  double next = (mesh.vertex(loop[(pos + 1) % len]) - mesh.vertex(v)).norm();
  return (mesh.vertex(v) - corner).norm() <= 0.5 * std::max(prev, next) * (1 + 1e-9);
}

} // namespace

SideAssignment assign_sides_from_corners(const TriMesh &mesh, std::span<const LoopCorners> loops) {
  SideAssignment assignment(mesh.vertex_count());
  std::vector<bool> loop_used(mesh.boundary_loops().size(), false);

  for (const auto &desc : loops) {
    const int m = static_cast<int>(desc.corners.size());
    if (m < 2 || static_cast<int>(desc.sides.size()) != m)
      throw side_error("each loop needs at least two corners and one side per corner");

    std::vector<int> snapped(m);
    for (int k = 0; k < m; ++k) {
      double best = std::numeric_limits<double>::infinity();
      for (int v : mesh.boundary_vertices()) {
        double d = (mesh.vertex(v) - desc.corners[k]).squaredNorm();
        if (d < best) {
          best = d;
          snapped[k] = v;
        }
      }
      if (!near_vertex(mesh, snapped[k], desc.corners[k]))
        throw side_error("corner " + std::to_string(k) + " is not on the mesh boundary");
    }
    const int loop_id = mesh.loop_position(snapped[0]).first;
    for (int k = 0; k < m; ++k) {
      if (mesh.loop_position(snapped[k]).first != loop_id)
        throw side_error("corners of one loop snap to different mesh loops");
      for (int j = 0; j < k; ++j)
        if (snapped[j] == snapped[k])
          throw side_error("two corners snap to the same boundary vertex " + std::to_string(snapped[k]));
    }
    if (loop_used[loop_id])
      throw side_error("two loop descriptions snap to the same mesh loop");
    loop_used[loop_id] = true;

    const auto &loop = mesh.boundary_loops()[loop_id];
    const int len = static_cast<int>(loop.size());
    std::vector<int> corner_at(len, -1);
    for (int k = 0; k < m; ++k)
      corner_at[mesh.loop_position(snapped[k]).second] = k;

    // Walking forward from corner 0, the first corner met tells whether the
    // user listed corners along the traversal direction.
    int step = 1;
    if (m >= 3) {
      int p = mesh.loop_position(snapped[0]).second;
      do
        p = (p + 1) % len;
      while (corner_at[p] < 0);
      step = corner_at[p] == 1 ? 1 : -1;
    }

    for (int k = 0; k < m; ++k) {
      int side = desc.sides[k];
      std::vector<int> path{snapped[k]};
      int p = mesh.loop_position(snapped[k]).second;
      do {
        p = (p + step + len) % len;
        path.push_back(loop[p]);
      } while (corner_at[p] < 0);
      if (path.back() != snapped[(k + 1) % m])
        throw side_error("corners of side " + std::to_string(side) + " are not consecutive on the loop");

      std::vector<double> arc(path.size(), 0.0);
      for (size_t j = 1; j < path.size(); ++j)
        arc[j] = arc[j - 1] + (mesh.vertex(path[j]) - mesh.vertex(path[j - 1])).norm();
      for (size_t j = 0; j < path.size(); ++j) {
        double s = j + 1 == path.size() ? 1.0 : arc[j] / arc.back();
        assignment[path[j]].push_back({side, s});
      }
    }
  }
  for (size_t l = 0; l < loop_used.size(); ++l)
    if (!loop_used[l])
      throw side_error("mesh boundary loop " + std::to_string(l) + " has no sides");
  return assignment;
}

void flip_side(SideAssignment &assignment, int side) {
  for (auto &samples : assignment)
    for (auto &sample : samples)
      if (sample.side == side)
        sample.s = 1.0 - sample.s;
}

SideLayout::SideLayout(const TriMesh &mesh) {
  if (!mesh.has_side_assignment())
    throw side_error("mesh has no side assignment");
  const auto &assignment = mesh.side_assignment();

  int side_count = 0;
  for (const auto &samples : assignment)
    for (const auto &sample : samples)
      side_count = std::max(side_count, sample.side + 1);
  sides_.resize(side_count);

  std::vector<std::vector<std::pair<double, int>>> members(side_count);
  for (int v = 0; v < mesh.vertex_count(); ++v)
    for (const auto &sample : assignment[v])
      members[sample.side].emplace_back(sample.s, v);

  // Marks the traversal edge leaving each boundary vertex.
  std::vector<int> covered(mesh.vertex_count(), 0);

  for (int i = 0; i < side_count; ++i) {
    auto &list = members[i];
    if (list.size() < 2)
      throw side_error("side " + std::to_string(i) + " has fewer than two vertices");
    std::sort(list.begin(), list.end());
    SideInfo &info = sides_[i];
    info.side = i;
    for (const auto &[s, v] : list) {
      info.vertices.push_back(v);
      info.params.push_back(s);
    }
    if (std::abs(info.params.front()) > kCornerTolerance || std::abs(info.params.back() - 1.0) > kCornerTolerance)
      throw side_error("side " + std::to_string(i) + " parameters do not span [0,1]");
    for (size_t j = 1; j < info.params.size(); ++j)
      if (!(info.params[j] > info.params[j - 1]))
        throw side_error("side " + std::to_string(i) + " parameters are not strictly monotone");

    info.loop = mesh.loop_position(info.vertices[0]).first;
    auto [prev0, next0] = mesh.loop_neighbors(info.vertices[0]);
    info.forward = next0 == info.vertices[1];
    if (!info.forward && prev0 != info.vertices[1])
      throw side_error("side " + std::to_string(i) + " is not a contiguous boundary path");
    for (size_t j = 0; j + 1 < info.vertices.size(); ++j) {
      int a = info.vertices[j], b = info.vertices[j + 1];
      auto [prev, next] = mesh.loop_neighbors(a);
      if ((info.forward ? next : prev) != b)
        throw side_error("side " + std::to_string(i) + " is not a contiguous boundary path");
      ++covered[info.forward ? a : b];
    }
  }
  for (int v : mesh.boundary_vertices())
    if (covered[v] != 1)
      throw side_error("boundary edge leaving vertex " + std::to_string(v) + " is covered by " +
                       std::to_string(covered[v]) + " sides");

  // Sides of a loop ordered by the position where their traversal starts.
  loop_sides_.resize(mesh.boundary_loops().size());
  std::vector<std::vector<std::pair<int, int>>> starts(loop_sides_.size());
  for (const auto &info : sides_) {
    int start = info.forward ? info.vertices.front() : info.vertices.back();
    starts[info.loop].emplace_back(mesh.loop_position(start).second, info.side);
  }
  position_.assign(side_count, -1);
  for (size_t l = 0; l < starts.size(); ++l) {
    if (starts[l].size() < 2)
      throw side_error("loop " + std::to_string(l) + " needs at least two sides");
    std::sort(starts[l].begin(), starts[l].end());
    for (const auto &[pos, side] : starts[l]) {
      position_[side] = static_cast<int>(loop_sides_[l].size());
      loop_sides_[l].push_back(side);
    }
  }
}

int SideLayout::previous(int side) const {
  const auto &list = loop_sides_[sides_[side].loop];
  int m = static_cast<int>(list.size());
  return list[(position_[side] + m - 1) % m];
}

int SideLayout::next(int side) const {
  const auto &list = loop_sides_[sides_[side].loop];
  return list[(position_[side] + 1) % list.size()];
}

bool SideLayout::all_forward() const {
  return std::all_of(sides_.begin(), sides_.end(), [](const SideInfo &s) { return s.forward; });
}

} // namespace ribbonpatch
