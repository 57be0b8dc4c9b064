#pragma once

#include "ribbonpatch/mesh.hpp"

#include <span>
#include <vector>

namespace ribbonpatch {

/// Domain description of one boundary loop: corner k is the start of
/// sides[k], which ends at corner k+1 (cyclically).
struct LoopCorners {
  std::vector<int> sides;
  std::vector<Vec2> corners;
};

/// Snaps each corner to the nearest boundary vertex and assigns normalized
/// arc-length parameters along the boundary path from corner k to corner k+1
/// that contains no other corner. The parameters follow the user's corner
/// order; if that order runs against the loop traversal, the resulting sides
/// are reversed (see SideInfo::forward).
SideAssignment assign_sides_from_corners(const TriMesh &mesh, std::span<const LoopCorners> loops);

/// Reflects s -> 1 - s on every sample of `side`.
void flip_side(SideAssignment &assignment, int side);

struct SideInfo {
  int side = -1;
  int loop = -1;
  std::vector<int> vertices; ///< ordered by increasing s, corners included
  std::vector<double> params;
  bool forward = true; ///< s increases along the loop traversal direction
};

/// Side structure of a mesh with a side assignment: which loop each side lies
/// on and the cyclic order of sides around each loop.
class SideLayout {
public:
  explicit SideLayout(const TriMesh &mesh);

  int side_count() const { return static_cast<int>(sides_.size()); }
  const SideInfo &side(int i) const { return sides_[i]; }
  const std::vector<SideInfo> &sides() const { return sides_; }

  /// Side ids of each mesh loop in traversal order.
  const std::vector<std::vector<int>> &loop_sides() const { return loop_sides_; }

  /// Neighbouring sides along the traversal direction.
  int previous(int side) const;
  int next(int side) const;

  bool all_forward() const;

private:
  std::vector<SideInfo> sides_;
  std::vector<std::vector<int>> loop_sides_;
  std::vector<int> position_; // index of each side within its loop's list
};

} // namespace ribbonpatch
