#include "ribbonpatch/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/SparseCholesky>

namespace ribbonpatch {

const char *MeshError::kind_name(Kind kind) {
  switch (kind) {
  case Kind::Parse: return "parse";
  case Kind::NonManifoldEdge: return "non_manifold_edge";
  case Kind::DegenerateTriangle: return "degenerate_triangle";
  case Kind::Disconnected: return "disconnected_mesh";
  case Kind::Topology: return "topology";
  case Kind::SideAssignment: return "side_assignment";
  }
  return "unknown";
}

namespace {

inline double cross(const Vec2 &a, const Vec2 &b) { return a.x() * b.y() - a.y() * b.x(); }

// Left perpendicular: rotates by +90 degrees.
inline Vec2 perp(const Vec2 &v) { return {-v.y(), v.x()}; }

using Edge = std::pair<int, int>;

} // namespace

TriMesh::TriMesh(std::vector<Vec2> vertices, std::vector<Triangle> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  const int n = vertex_count();
  if (n == 0 || triangles_.empty())
    throw MeshError(MeshError::Kind::Topology, "mesh has no triangles");

  for (int t = 0; t < triangle_count(); ++t) {
    for (int k : triangles_[t])
      if (k < 0 || k >= n)
        throw MeshError(MeshError::Kind::Topology,
                        "triangle " + std::to_string(t) + " references vertex " + std::to_string(k));
    double area = triangle_area(t);
    if (!(area > 0.0))
      throw MeshError(MeshError::Kind::DegenerateTriangle,
                      "triangle " + std::to_string(t) + " has non-positive signed area " +
                          std::to_string(area));
  }

  // Directed edge counts; an undirected edge with more than two incident
  // faces, or two faces traversing it the same way, is non-manifold.
  std::map<Edge, int> directed;
  std::map<Edge, int> undirected;
  for (const auto &tri : triangles_) {
    for (int k = 0; k < 3; ++k) {
      int a = tri[k], b = tri[(k + 1) % 3];
      if (++undirected[{std::min(a, b), std::max(a, b)}] > 2)
        throw MeshError(MeshError::Kind::NonManifoldEdge, "edge (" + std::to_string(std::min(a, b)) + "," +
                                                              std::to_string(std::max(a, b)) +
                                                              ") has more than two incident faces");
      if (++directed[{a, b}] > 1)
        throw MeshError(MeshError::Kind::NonManifoldEdge, "edge (" + std::to_string(a) + "," +
                                                              std::to_string(b) +
                                                              ") is shared by inconsistently oriented faces");
    }
  }

  // Connectivity over triangles (vertices unused by any triangle count as
  // separate components).
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto &tri : triangles_) {
    parent[find(tri[1])] = find(tri[0]);
    parent[find(tri[2])] = find(tri[0]);
  }
  for (int v = 1; v < n; ++v)
    if (find(v) != find(0))
      throw MeshError(MeshError::Kind::Disconnected,
                      "vertex " + std::to_string(v) + " is not connected to vertex 0");

  // Boundary edges keep the orientation of their single face.
  std::vector<int> next(n, -1);
  for (const auto &[edge, count] : directed) {
    if (directed.count({edge.second, edge.first}))
      continue;
    if (next[edge.first] != -1)
      throw MeshError(MeshError::Kind::NonManifoldEdge,
                      "boundary vertex " + std::to_string(edge.first) + " is non-manifold");
    next[edge.first] = edge.second;
  }
  if (std::none_of(next.begin(), next.end(), [](int x) { return x >= 0; }))
    throw MeshError(MeshError::Kind::Topology, "mesh has no boundary");

  std::vector<bool> visited(n, false);
  for (int start = 0; start < n; ++start) {
    if (next[start] < 0 || visited[start])
      continue;
    std::vector<int> loop;
    int v = start;
    do {
      if (visited[v] || next[v] < 0)
        throw MeshError(MeshError::Kind::Topology, "boundary chain through vertex " + std::to_string(v) +
                                                       " does not close");
      visited[v] = true;
      loop.push_back(v);
      v = next[v];
    } while (v != start);
    loops_.push_back(std::move(loop));
  }
  // Outer loop (largest positive area) first; the rest keep discovery order.
  std::stable_sort(loops_.begin(), loops_.end(), [this](const auto &a, const auto &b) {
    return signed_area(*this, a) > signed_area(*this, b);
  });

  boundary_slot_.assign(n, -1);
  interior_slot_.assign(n, -1);
  loop_pos_.assign(n, {-1, -1});
  for (int l = 0; l < static_cast<int>(loops_.size()); ++l) {
    for (int k = 0; k < static_cast<int>(loops_[l].size()); ++k) {
      int v = loops_[l][k];
      boundary_slot_[v] = static_cast<int>(boundary_.size());
      boundary_.push_back(v);
      loop_pos_[v] = {l, k};
    }
  }
  for (int v = 0; v < n; ++v) {
    if (boundary_slot_[v] < 0) {
      interior_slot_[v] = static_cast<int>(interior_.size());
      interior_.push_back(v);
    }
  }
}

TriMesh TriMesh::with_side_assignment(SideAssignment assignment) const {
  if (static_cast<int>(assignment.size()) != vertex_count())
    throw MeshError(MeshError::Kind::SideAssignment, "side assignment size does not match vertex count");
  for (int v = 0; v < vertex_count(); ++v) {
    const auto &samples = assignment[v];
    if (is_boundary(v) && samples.empty())
      throw MeshError(MeshError::Kind::SideAssignment,
                      "boundary vertex " + std::to_string(v) + " has no side");
    if (!is_boundary(v) && !samples.empty())
      throw MeshError(MeshError::Kind::SideAssignment,
                      "interior vertex " + std::to_string(v) + " is assigned to a side");
    if (samples.size() > 2)
      throw MeshError(MeshError::Kind::SideAssignment,
                      "vertex " + std::to_string(v) + " belongs to more than two sides");
    for (const auto &sample : samples)
      if (sample.side < 0 || !(sample.s >= 0.0 && sample.s <= 1.0))
        throw MeshError(MeshError::Kind::SideAssignment,
                        "vertex " + std::to_string(v) + " has an invalid side sample");
  }
  TriMesh result = *this;
  result.side_assignment_ = std::move(assignment);
  return result;
}

std::pair<int, int> TriMesh::loop_position(int v) const { return loop_pos_[v]; }

std::pair<int, int> TriMesh::loop_neighbors(int v) const {
  auto [l, k] = loop_pos_[v];
  const auto &loop = loops_[l];
  int m = static_cast<int>(loop.size());
  return {loop[(k + m - 1) % m], loop[(k + 1) % m]};
}

double TriMesh::triangle_area(int t) const {
  const auto &tri = triangles_[t];
  return 0.5 * cross(vertices_[tri[1]] - vertices_[tri[0]], vertices_[tri[2]] - vertices_[tri[0]]);
}

double TriMesh::total_area() const {
  double a = 0.0;
  for (int t = 0; t < triangle_count(); ++t)
    a += triangle_area(t);
  return a;
}

double signed_area(const TriMesh &mesh, std::span<const int> loop) {
  double a = 0.0;
  for (size_t k = 0; k < loop.size(); ++k)
    a += cross(mesh.vertex(loop[k]), mesh.vertex(loop[(k + 1) % loop.size()]));
  return a;
}

SparseMatrix cotangent_weights(const TriMesh &mesh) {
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(12 * mesh.triangle_count());
  for (const auto &tri : mesh.triangles()) {
    for (int k = 0; k < 3; ++k) {
      int i = tri[(k + 1) % 3], j = tri[(k + 2) % 3];
      Vec2 a = mesh.vertex(i) - mesh.vertex(tri[k]);
      Vec2 b = mesh.vertex(j) - mesh.vertex(tri[k]);
      double w = 0.5 * a.dot(b) / cross(a, b);
      entries.emplace_back(i, j, -w);
      entries.emplace_back(j, i, -w);
      entries.emplace_back(i, i, w);
      entries.emplace_back(j, j, w);
    }
  }
  SparseMatrix L(mesh.vertex_count(), mesh.vertex_count());
  L.setFromTriplets(entries.begin(), entries.end());
  return L;
}

SparseMatrix lumped_mass(const TriMesh &mesh) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(mesh.vertex_count());
  for (int t = 0; t < mesh.triangle_count(); ++t)
    for (int k : mesh.triangles()[t])
      diag[k] += mesh.triangle_area(t) / 3.0;
  SparseMatrix M(mesh.vertex_count(), mesh.vertex_count());
  M.reserve(Eigen::VectorXi::Ones(mesh.vertex_count()));
  for (int i = 0; i < mesh.vertex_count(); ++i)
    M.insert(i, i) = diag[i];
  M.makeCompressed();
  return M;
}

SparseMatrix consistent_mass(const TriMesh &mesh) {
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(9 * mesh.triangle_count());
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto &tri = mesh.triangles()[t];
    double a = mesh.triangle_area(t) / 12.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        entries.emplace_back(tri[i], tri[j], i == j ? 2.0 * a : a);
  }
  SparseMatrix M(mesh.vertex_count(), mesh.vertex_count());
  M.setFromTriplets(entries.begin(), entries.end());
  return M;
}

SparseMatrix boundary_mass(const TriMesh &mesh, bool lumped) {
  std::vector<Eigen::Triplet<double>> entries;
  for (const auto &loop : mesh.boundary_loops()) {
    for (size_t k = 0; k < loop.size(); ++k) {
      int a = loop[k], b = loop[(k + 1) % loop.size()];
      double l = (mesh.vertex(b) - mesh.vertex(a)).norm();
      if (lumped) {
        entries.emplace_back(a, a, l / 2.0);
        entries.emplace_back(b, b, l / 2.0);
      } else {
        entries.emplace_back(a, a, l / 3.0);
        entries.emplace_back(b, b, l / 3.0);
        entries.emplace_back(a, b, l / 6.0);
        entries.emplace_back(b, a, l / 6.0);
      }
    }
  }
  SparseMatrix N(mesh.vertex_count(), mesh.vertex_count());
  N.setFromTriplets(entries.begin(), entries.end());
  return N;
}

FaceGradientOperator::FaceGradientOperator(const TriMesh &mesh) {
  blocks_.reserve(mesh.triangle_count());
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto &tri = mesh.triangles()[t];
    double twice_area = 2.0 * mesh.triangle_area(t);
    std::array<Vec2, 3> g;
    for (int k = 0; k < 3; ++k) {
      // Gradient of the hat at corner k is the rotated opposite edge.
      Vec2 opposite = mesh.vertex(tri[(k + 2) % 3]) - mesh.vertex(tri[(k + 1) % 3]);
      g[k] = perp(opposite) / twice_area;
    }
    blocks_.push_back(g);
  }
}

std::vector<Vec2> FaceGradientOperator::apply(const TriMesh &mesh, std::span<const double> field) const {
  if (static_cast<int>(field.size()) != mesh.vertex_count())
    throw Error("field length does not match vertex count");
  std::vector<Vec2> result(blocks_.size());
  for (size_t t = 0; t < blocks_.size(); ++t) {
    const auto &tri = mesh.triangles()[t];
    result[t] = blocks_[t][0] * field[tri[0]] + blocks_[t][1] * field[tri[1]] + blocks_[t][2] * field[tri[2]];
  }
  return result;
}

std::vector<Vec2> face_gradients(const TriMesh &mesh, std::span<const double> field) {
  return FaceGradientOperator(mesh).apply(mesh, field);
}

namespace {

std::vector<Vec2> weighted_vertex_gradients(const TriMesh &mesh, std::span<const double> field,
                                            bool boundary_faces_only) {
  auto faces = face_gradients(mesh, field);
  std::vector<Vec2> sum(mesh.vertex_count(), Vec2::Zero());
  std::vector<double> weight(mesh.vertex_count(), 0.0);

  auto owns_boundary_edge = [&](int t, int v) {
    if (!mesh.is_boundary(v))
      return true;
    auto [prev, next] = mesh.loop_neighbors(v);
    const auto &tri = mesh.triangles()[t];
    for (int k = 0; k < 3; ++k) {
      int a = tri[k], b = tri[(k + 1) % 3];
      if ((a == prev && b == v) || (a == v && b == next))
        return true;
    }
    return false;
  };

  for (int t = 0; t < mesh.triangle_count(); ++t) {
    double area = mesh.triangle_area(t);
    for (int v : mesh.triangles()[t]) {
      if (boundary_faces_only && !owns_boundary_edge(t, v))
        continue;
      sum[v] += area * faces[t];
      weight[v] += area;
    }
  }
  for (int v = 0; v < mesh.vertex_count(); ++v)
    if (weight[v] > 0.0)
      sum[v] /= weight[v];
  return sum;
}

} // namespace

std::vector<Vec2> vertex_gradients(const TriMesh &mesh, std::span<const double> field) {
  return weighted_vertex_gradients(mesh, field, false);
}

std::vector<Vec2> boundary_face_gradients(const TriMesh &mesh, std::span<const double> field) {
  return weighted_vertex_gradients(mesh, field, true);
}

std::vector<Vec2> inward_boundary_normals(const TriMesh &mesh) {
  std::vector<Vec2> normals;
  normals.reserve(mesh.boundary_vertices().size());
  for (int v : mesh.boundary_vertices()) {
    auto [prev, next] = mesh.loop_neighbors(v);
    Vec2 n_in = perp(mesh.vertex(v) - mesh.vertex(prev)).normalized();
    Vec2 n_out = perp(mesh.vertex(next) - mesh.vertex(v)).normalized();
    Vec2 n = n_in + n_out;
    // A boundary spike (edges folding back) leaves no bisector; fall back to
    // the rotated edge direction.
    if (n.norm() < 1e-12)
      n = perp(mesh.vertex(next) - mesh.vertex(prev));
    normals.push_back(n.normalized());
  }
  return normals;
}

std::vector<Vec2> consistent_boundary_normals(const TriMesh &mesh, bool lumped_n) {
  const auto &boundary = mesh.boundary_vertices();
  const int nb = static_cast<int>(boundary.size());

  // g_i = integral of phi_i * n over the boundary = 1/2 perp(x_next - x_prev).
  Eigen::MatrixX2d g(nb, 2);
  for (int k = 0; k < nb; ++k) {
    auto [prev, next] = mesh.loop_neighbors(boundary[k]);
    g.row(k) = 0.5 * perp(mesh.vertex(next) - mesh.vertex(prev)).transpose();
  }

  SparseMatrix N = boundary_mass(mesh, lumped_n);
  std::vector<Eigen::Triplet<double>> entries;
  for (int k = 0; k < nb; ++k) {
    for (SparseMatrix::InnerIterator it(N, boundary[k]); it; ++it)
      entries.emplace_back(mesh.boundary_slot(static_cast<int>(it.row())), k, it.value());
  }
  SparseMatrix Nbb(nb, nb);
  Nbb.setFromTriplets(entries.begin(), entries.end());

  Eigen::SimplicialLDLT<SparseMatrix> solver(Nbb);
  if (solver.info() != Eigen::Success)
    throw SolverError("boundary mass factorization failed", std::nan(""));
  Eigen::MatrixX2d n = solver.solve(g);

  std::vector<Vec2> normals(nb);
  for (int k = 0; k < nb; ++k)
    normals[k] = n.row(k).transpose();
  return normals;
}

MeshQuality mesh_quality(const TriMesh &mesh) {
  MeshQuality q;
  q.min_angle_deg = 180.0;
  q.min_edge = std::numeric_limits<double>::infinity();
  for (const auto &tri : mesh.triangles()) {
    bool obtuse = false;
    for (int k = 0; k < 3; ++k) {
      Vec2 a = mesh.vertex(tri[(k + 1) % 3]) - mesh.vertex(tri[k]);
      Vec2 b = mesh.vertex(tri[(k + 2) % 3]) - mesh.vertex(tri[k]);
      double angle = std::atan2(cross(a, b), a.dot(b)) * 180.0 / std::numbers::pi;
      q.min_angle_deg = std::min(q.min_angle_deg, angle);
      q.max_angle_deg = std::max(q.max_angle_deg, angle);
      obtuse = obtuse || angle > 90.0 + 1e-9;
      q.min_edge = std::min(q.min_edge, a.norm());
      q.max_edge = std::max(q.max_edge, a.norm());
    }
    q.obtuse_triangles += obtuse ? 1 : 0;
  }
  return q;
}

} // namespace ribbonpatch
