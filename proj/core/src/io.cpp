#include "ribbonpatch/io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ribbonpatch::io {

namespace {

using json = nlohmann::json;

MeshError parse_error(const std::string &message) { return MeshError(MeshError::Kind::Parse, message); }

// Next non-empty line with comments stripped.
bool next_line(std::istream &in, std::string &line) {
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      return true;
  }
  return false;
}

std::ifstream open_input(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open " + path.string());
  return in;
}

Vec3 to_point(const json &j) {
  if (!j.is_array() || j.size() != 3)
    throw RibbonError("control point must be [x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

} // namespace

TriMesh read_off(std::istream &in) {
  std::string line;
  if (!next_line(in, line))
    throw parse_error("empty OFF input");
  std::istringstream header(line);
  std::string magic;
  header >> magic;
  if (magic != "OFF")
    throw parse_error("missing OFF header");

  int nv = -1, nf = -1, ne = 0;
  if (!(header >> nv)) {
    if (!next_line(in, line))
      throw parse_error("missing OFF counts");
    std::istringstream counts(line);
    counts >> nv >> nf >> ne;
  } else {
    header >> nf >> ne;
  }
  if (nv <= 0 || nf <= 0)
    throw parse_error("invalid OFF vertex/face counts");

  std::vector<Vec2> vertices;
  vertices.reserve(nv);
  for (int i = 0; i < nv; ++i) {
    if (!next_line(in, line))
      throw parse_error("OFF ends before vertex " + std::to_string(i));
    std::istringstream ls(line);
    double x, y, z = 0.0;
    if (!(ls >> x >> y))
      throw parse_error("malformed vertex " + std::to_string(i));
    ls >> z;
    if (z != 0.0)
      throw parse_error("vertex " + std::to_string(i) + " is not planar (z != 0)");
    vertices.emplace_back(x, y);
  }

  std::vector<TriMesh::Triangle> triangles;
  triangles.reserve(nf);
  for (int i = 0; i < nf; ++i) {
    if (!next_line(in, line))
      throw parse_error("OFF ends before face " + std::to_string(i));
    std::istringstream ls(line);
    int count;
    TriMesh::Triangle tri;
    if (!(ls >> count) || count != 3)
      throw parse_error("face " + std::to_string(i) + " is not a triangle");
    if (!(ls >> tri[0] >> tri[1] >> tri[2]))
      throw parse_error("malformed face " + std::to_string(i));
    triangles.push_back(tri);
  }
  return TriMesh(std::move(vertices), std::move(triangles));
}

TriMesh load_off(const std::filesystem::path &path) {
  auto in = open_input(path);
  return read_off(in);
}

void write_off(std::ostream &out, const TriMesh &mesh) {
  out << "OFF\n" << mesh.vertex_count() << ' ' << mesh.triangle_count() << " 0\n";
  for (const auto &v : mesh.vertices())
    out << format_double(v.x()) << ' ' << format_double(v.y()) << " 0\n";
  for (const auto &t : mesh.triangles())
    out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

RibbonSet read_ribbons(std::istream &in) {
  RibbonSet set;
  try {
    json doc = json::parse(in);
    for (const auto &side : doc.at("sides")) {
      Ribbon::Net net;
      for (const auto &row : side.at("control_net")) {
        std::vector<Vec3> points;
        for (const auto &p : row)
          points.push_back(to_point(p));
        net.push_back(std::move(points));
      }
      if (net.empty() || net[0].empty())
        throw RibbonError("empty control net");
      int ds = side.value("degree_s", static_cast<int>(net.size()) - 1);
      int dh = side.value("degree_h", static_cast<int>(net[0].size()) - 1);
      auto knots_s = side.contains("knots_s") ? side["knots_s"].get<std::vector<double>>() : bezier_knots(ds);
      auto knots_h = side.contains("knots_h") ? side["knots_h"].get<std::vector<double>>() : bezier_knots(dh);
      set.sides.emplace_back(ds, dh, std::move(knots_s), std::move(knots_h), std::move(net));
    }
    if (doc.contains("loops")) {
      for (const auto &loop : doc["loops"]) {
        LoopCorners lc;
        lc.sides = loop.at("sides").get<std::vector<int>>();
        for (const auto &c : loop.at("corners")) {
          if (!c.is_array() || c.size() < 2)
            throw RibbonError("loop corner must be [x, y]");
          lc.corners.emplace_back(c[0].get<double>(), c[1].get<double>());
        }
        for (int s : lc.sides)
          if (s < 0 || s >= static_cast<int>(set.sides.size()))
            throw RibbonError("loop refers to unknown side " + std::to_string(s));
        set.loops.push_back(std::move(lc));
      }
    }
  } catch (const json::exception &e) {
    throw RibbonError(std::string("ribbon JSON: ") + e.what());
  }
  return set;
}

RibbonSet load_ribbons(const std::filesystem::path &path) {
  auto in = open_input(path);
  return read_ribbons(in);
}

void write_ribbons(std::ostream &out, const RibbonSet &set) {
  json doc;
  doc["sides"] = json::array();
  for (const auto &r : set.sides) {
    json side;
    side["degree_s"] = r.degree_s();
    side["degree_h"] = r.degree_h();
    side["knots_s"] = r.knots_s();
    side["knots_h"] = r.knots_h();
    json net = json::array();
    for (const auto &row : r.control_net()) {
      json jr = json::array();
      for (const auto &p : row)
        jr.push_back({p.x(), p.y(), p.z()});
      net.push_back(jr);
    }
    side["control_net"] = net;
    doc["sides"].push_back(side);
  }
  doc["loops"] = json::array();
  for (const auto &loop : set.loops) {
    json jl;
    jl["sides"] = loop.sides;
    jl["corners"] = json::array();
    for (const auto &c : loop.corners)
      jl["corners"].push_back({c.x(), c.y()});
    doc["loops"].push_back(jl);
  }
  out << doc.dump(2) << '\n';
}

SideAssignment read_side_assignment(std::istream &in, int vertex_count) {
  SideAssignment assignment(vertex_count);
  try {
    json doc = json::parse(in);
    for (const auto &entry : doc.at("assignment")) {
      int v = entry.at("vertex").get<int>();
      if (v < 0 || v >= vertex_count)
        throw MeshError(MeshError::Kind::SideAssignment, "sidecar vertex " + std::to_string(v) + " out of range");
      assignment[v].push_back({entry.at("side").get<int>(), entry.at("s").get<double>()});
    }
  } catch (const json::exception &e) {
    throw MeshError(MeshError::Kind::SideAssignment, std::string("side sidecar JSON: ") + e.what());
  }
  return assignment;
}

SideAssignment load_side_assignment(const std::filesystem::path &path, int vertex_count) {
  auto in = open_input(path);
  return read_side_assignment(in, vertex_count);
}

void write_side_assignment(std::ostream &out, const SideAssignment &assignment) {
  json entries = json::array();
  for (size_t v = 0; v < assignment.size(); ++v)
    for (const auto &sample : assignment[v])
      entries.push_back({{"vertex", v}, {"side", sample.side}, {"s", sample.s}});
  out << json{{"assignment", entries}}.dump(1) << '\n';
}

void write_ply(std::ostream &out, const PointMatrix &positions, const std::vector<TriMesh::Triangle> &triangles,
               std::span<const Rgb> colors) {
  const bool colored = !colors.empty();
  if (colored && static_cast<Eigen::Index>(colors.size()) != positions.rows())
    throw Error("PLY: colour count does not match vertex count");
  out << "ply\nformat ascii 1.0\n";
  out << "element vertex " << positions.rows() << '\n';
  out << "property double x\nproperty double y\nproperty double z\n";
  if (colored)
    out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  out << "element face " << triangles.size() << '\n';
  out << "property list uchar int vertex_indices\nend_header\n";
  for (Eigen::Index i = 0; i < positions.rows(); ++i) {
    out << format_double(positions(i, 0)) << ' ' << format_double(positions(i, 1)) << ' '
        << format_double(positions(i, 2));
    if (colored)
      out << ' ' << int(colors[i][0]) << ' ' << int(colors[i][1]) << ' ' << int(colors[i][2]);
    out << '\n';
  }
  for (const auto &t : triangles)
    out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

namespace {

std::uint8_t channel(double x) { return static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(x, 0.0, 1.0))); }

Rgb lerp(const Vec3 &a, const Vec3 &b, double t) {
  Vec3 c = a + t * (b - a);
  return {channel(c.x()), channel(c.y()), channel(c.z())};
}

} // namespace

Rgb diverging_color(double value, double limit) {
  double t = limit > 0.0 ? std::clamp(value / limit, -1.0, 1.0) : 0.0;
  const Vec3 blue(0.23, 0.30, 0.75), white(0.87, 0.87, 0.87), red(0.71, 0.02, 0.15);
  return t < 0.0 ? lerp(white, blue, -t) : lerp(white, red, t);
}

Rgb sign_split_color(double value, double limit) {
  double t = limit > 0.0 ? std::clamp(std::abs(value) / limit, 0.0, 1.0) : 0.0;
  if (value < 0.0)
    return lerp(Vec3(1.0, 0.95, 0.2), Vec3(0.95, 0.5, 0.0), t);
  return lerp(Vec3(0.1, 0.1, 0.35), Vec3(0.55, 0.8, 1.0), t);
}

void write_triplets(std::ostream &out, const SparseMatrix &matrix) {
  out << "% rows cols nonzeros\n" << matrix.rows() << ' ' << matrix.cols() << ' ' << matrix.nonZeros() << '\n';
  for (int c = 0; c < matrix.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(matrix, c); it; ++it)
      out << it.row() << ' ' << it.col() << ' ' << format_double(it.value()) << '\n';
}

std::string format_double(double value, int significant_digits) {
  if (value == 0.0)
    return "0";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", significant_digits, value);
  return buffer;
}

} // namespace ribbonpatch::io
