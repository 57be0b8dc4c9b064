#include "ribbonpatch/mesh_generators.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>

namespace ribbonpatch::generators {

namespace {

// Deduplicates vertices that are generated more than once (shared fan edges).
class VertexPool {
public:
  explicit VertexPool(double tolerance) : tolerance_(tolerance) {}

  int add(const Vec2 &p) {
    auto key = std::make_pair(std::llround(p.x() / tolerance_), std::llround(p.y() / tolerance_));
    auto [it, inserted] = index_.try_emplace(key, static_cast<int>(points_.size()));
    if (inserted)
      points_.push_back(p);
    return it->second;
  }

  std::vector<Vec2> take() { return std::move(points_); }

private:
  double tolerance_;
  std::map<std::pair<long long, long long>, int> index_;
  std::vector<Vec2> points_;
};

void add_cell(std::vector<TriMesh::Triangle> &tris, VertexPool &pool, const Vec2 &p00, const Vec2 &p10,
              const Vec2 &p01, const Vec2 &p11, Diagonal diagonal) {
  int a = pool.add(p00), b = pool.add(p10), c = pool.add(p11), d = pool.add(p01);
  if (diagonal == Diagonal::Forward) {
    tris.push_back({a, b, c});
    tris.push_back({a, c, d});
  } else {
    int m = pool.add(0.25 * (p00 + p10 + p01 + p11));
    tris.push_back({a, b, m});
    tris.push_back({b, c, m});
    tris.push_back({c, d, m});
    tris.push_back({d, a, m});
  }
}

} // namespace

TriMesh grid_rectangle(int n, double x0, double y0, double x1, double y1, Diagonal diagonal) {
  if (n < 1)
    throw Error("grid resolution must be positive");
  double hx = (x1 - x0) / n, hy = (y1 - y0) / n;
  VertexPool pool(1e-9 * std::min(hx, hy));
  std::vector<TriMesh::Triangle> tris;
  // Interpolated lattice, so the far sides land exactly on x1 and y1.
  auto at = [&](int i, int j) { return Vec2((x0 * (n - i) + x1 * i) / n, (y0 * (n - j) + y1 * j) / n); };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      add_cell(tris, pool, at(i, j), at(i + 1, j), at(i, j + 1), at(i + 1, j + 1), diagonal);
  return TriMesh(pool.take(), std::move(tris));
}

TriMesh unit_square(int n, Diagonal diagonal) { return grid_rectangle(n, 0.0, 0.0, 1.0, 1.0, diagonal); }

TriMesh square_annulus(int n, double outer, double inner, Diagonal diagonal) {
  double h = 2.0 * outer / n;
  double cells = (outer - inner) / h;
  if (std::abs(cells - std::round(cells)) > 1e-9 || inner <= 0.0 || inner >= outer)
    throw Error("annulus hole must align with the grid");
  VertexPool pool(1e-9 * h);
  std::vector<TriMesh::Triangle> tris;
  auto at = [&](int i, int j) { return Vec2(outer * (2 * i - n) / n, outer * (2 * j - n) / n); };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      Vec2 mid = 0.5 * (at(i, j) + at(i + 1, j + 1));
      if (std::abs(mid.x()) < inner && std::abs(mid.y()) < inner)
        continue;
      add_cell(tris, pool, at(i, j), at(i + 1, j), at(i, j + 1), at(i + 1, j + 1), diagonal);
    }
  return TriMesh(pool.take(), std::move(tris));
}

TriMesh polygon_fan(std::span<const Vec2> corners, const Vec2 &center, int k) {
  if (corners.size() < 3 || k < 1)
    throw Error("polygon fan needs at least three corners and k >= 1");
  double scale = 0.0;
  for (const auto &c : corners)
    scale = std::max(scale, (c - center).norm());
  VertexPool pool(1e-10 * scale / k);
  std::vector<TriMesh::Triangle> tris;
  const int m = static_cast<int>(corners.size());
  for (int f = 0; f < m; ++f) {
    const Vec2 &a = center, &b = corners[f], &c = corners[(f + 1) % m];
    // Barycentric lattice point (i along a->b, j along a->c).
    auto point = [&](int i, int j) { return Vec2(a + (b - a) * (double(i) / k) + (c - a) * (double(j) / k)); };
    for (int i = 0; i < k; ++i)
      for (int j = 0; i + j < k; ++j) {
        int p = pool.add(point(i, j)), q = pool.add(point(i + 1, j)), r = pool.add(point(i, j + 1));
        tris.push_back({p, q, r});
        if (i + j + 1 < k) {
          int s = pool.add(point(i + 1, j + 1));
          tris.push_back({q, s, r});
        }
      }
  }
  return TriMesh(pool.take(), std::move(tris));
}

std::vector<Vec2> regular_polygon(int sides, double radius, double phase) {
  std::vector<Vec2> corners;
  for (int k = 0; k < sides; ++k) {
    double t = phase + 2.0 * std::numbers::pi * k / sides;
    corners.emplace_back(radius * std::cos(t), radius * std::sin(t));
  }
  return corners;
}

TriMesh jitter_interior(const TriMesh &mesh, double amplitude, unsigned seed) {
  std::vector<double> local(mesh.vertex_count(), std::numeric_limits<double>::infinity());
  for (const auto &tri : mesh.triangles())
    for (int k = 0; k < 3; ++k) {
      double l = (mesh.vertex(tri[k]) - mesh.vertex(tri[(k + 1) % 3])).norm();
      local[tri[k]] = std::min(local[tri[k]], l);
      local[tri[(k + 1) % 3]] = std::min(local[tri[(k + 1) % 3]], l);
    }
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto vertices = mesh.vertices();
  for (int v : mesh.interior_vertices())
    vertices[v] += amplitude * local[v] * Vec2(unit(rng), unit(rng));
  return TriMesh(std::move(vertices), mesh.triangles());
}

} // namespace ribbonpatch::generators
