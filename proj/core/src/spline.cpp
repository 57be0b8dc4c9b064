#include "ribbonpatch/spline.hpp"

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>

namespace ribbonpatch {

namespace {

void check_parameter(double t, const char *name) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::out_of_range(std::string("ribbon parameter ") + name + " = " + std::to_string(t) +
                            " is outside [0,1]");
}

// Knot span index k with knots[k] <= t < knots[k+1]; the last non-empty span
// at t = 1.
int find_span(int degree, const std::vector<double> &knots, double t) {
  int n = static_cast<int>(knots.size()) - degree - 2; // last control point index
  if (t >= knots[n + 1])
    return n;
  auto it = std::upper_bound(knots.begin() + degree, knots.begin() + n + 1, t);
  return static_cast<int>(it - knots.begin()) - 1;
}

// de Boor's algorithm on a generic point type.
template <typename Point>
Point de_boor(int degree, const std::vector<double> &knots, std::span<const Point> points, double t) {
  int k = find_span(degree, knots, t);
  std::vector<Point> d(points.begin() + (k - degree), points.begin() + (k + 1));
  for (int r = 1; r <= degree; ++r)
    for (int j = degree; j >= r; --j) {
      int i = k - degree + j;
      double denom = knots[i + degree - r + 1] - knots[i];
      double alpha = denom > 0.0 ? (t - knots[i]) / denom : 0.0;
      d[j] = (1.0 - alpha) * d[j - 1] + alpha * d[j];
    }
  return d[degree];
}

// Control points and knots of the derivative curve.
template <typename Point>
std::vector<Point> derivative_points(int degree, const std::vector<double> &knots, std::span<const Point> points) {
  std::vector<Point> q;
  q.reserve(points.size() - 1);
  for (size_t i = 0; i + 1 < points.size(); ++i) {
    double denom = knots[i + degree + 1] - knots[i + 1];
    q.push_back(denom > 0.0 ? Point(degree / denom * (points[i + 1] - points[i])) : Point(0.0 * points[i]));
  }
  return q;
}

std::vector<double> derivative_knots(const std::vector<double> &knots) {
  return std::vector<double>(knots.begin() + 1, knots.end() - 1);
}

// Evaluates each s-row of the net as a curve in h, at derivative order
// 0 or 1 in h.
std::vector<Vec3> rows_at(const Ribbon &r, double h, bool derivative) {
  std::vector<Vec3> result;
  result.reserve(r.rows());
  for (const auto &row : r.control_net()) {
    std::span<const Vec3> pts(row);
    if (!derivative) {
      result.push_back(de_boor<Vec3>(r.degree_h(), r.knots_h(), pts, h));
    } else {
      auto q = derivative_points<Vec3>(r.degree_h(), r.knots_h(), pts);
      result.push_back(de_boor<Vec3>(r.degree_h() - 1, derivative_knots(r.knots_h()), q, h));
    }
  }
  return result;
}

void validate_knots(int degree, const std::vector<double> &knots, int count, const char *dir) {
  std::string name(dir);
  if (degree < 0)
    throw RibbonError("negative degree in " + name);
  if (static_cast<int>(knots.size()) != count + degree + 1)
    throw RibbonError("knot count in " + name + " must equal control points + degree + 1");
  for (size_t i = 1; i < knots.size(); ++i)
    if (knots[i] < knots[i - 1])
      throw RibbonError("knots in " + name + " are not non-decreasing");
  for (int i = 1; i <= degree; ++i)
    if (knots[i] != knots[0] || knots[knots.size() - 1 - i] != knots.back())
      throw RibbonError("knots in " + name + " are not clamped");
  if (!(knots.back() > knots.front()))
    throw RibbonError("knot vector in " + name + " has zero length");
}

std::vector<double> normalized(std::vector<double> knots) {
  double a = knots.front(), b = knots.back();
  for (auto &k : knots)
    k = (k - a) / (b - a);
  knots.back() = 1.0;
  return knots;
}

} // namespace

std::vector<double> bezier_knots(int degree) {
  std::vector<double> knots(degree + 1, 0.0);
  knots.resize(2 * degree + 2, 1.0);
  return knots;
}

Ribbon::Ribbon(int degree_s, int degree_h, std::vector<double> knots_s, std::vector<double> knots_h, Net control_net)
    : degree_s_(degree_s), degree_h_(degree_h), net_(std::move(control_net)) {
  if (degree_h < 1)
    throw RibbonError("ribbon degree in h must be at least 1");
  if (net_.empty() || net_[0].empty())
    throw RibbonError("empty control net");
  for (const auto &row : net_)
    if (row.size() != net_[0].size())
      throw RibbonError("control net rows have different lengths");
  for (const auto &row : net_)
    for (const auto &p : row)
      if (!p.allFinite())
        throw RibbonError("control net contains non-finite coordinates");
  validate_knots(degree_s, knots_s, rows(), "s");
  validate_knots(degree_h, knots_h, columns(), "h");
  knots_s_ = normalized(std::move(knots_s));
  knots_h_ = normalized(std::move(knots_h));
}

Ribbon Ribbon::bezier(Net control_net) {
  if (control_net.empty() || control_net[0].empty())
    throw RibbonError("empty control net");
  int ds = static_cast<int>(control_net.size()) - 1;
  int dh = static_cast<int>(control_net[0].size()) - 1;
  return Ribbon(ds, dh, bezier_knots(ds), bezier_knots(dh), std::move(control_net));
}

Vec3 Ribbon::eval(double s, double h) const {
  check_parameter(s, "s");
  check_parameter(h, "h");
  auto column = rows_at(*this, h, false);
  return de_boor<Vec3>(degree_s_, knots_s_, column, s);
}

Ribbon::Partials Ribbon::eval_partials(double s, double h) const {
  check_parameter(s, "s");
  check_parameter(h, "h");
  Partials p;
  auto column = rows_at(*this, h, false);
  if (degree_s_ == 0) {
    p.ds = Vec3::Zero();
  } else {
    auto q = derivative_points<Vec3>(degree_s_, knots_s_, column);
    p.ds = de_boor<Vec3>(degree_s_ - 1, derivative_knots(knots_s_), q, s);
  }
  auto dcolumn = rows_at(*this, h, true);
  p.dh = de_boor<Vec3>(degree_s_, knots_s_, dcolumn, s);
  return p;
}

Ribbon::BoundaryData Ribbon::boundary_data(double s) const {
  return {eval(s, 0.0), eval_partials(s, 0.0).dh};
}

Ribbon Ribbon::reversed_s() const {
  Net net(net_.rbegin(), net_.rend());
  std::vector<double> knots(knots_s_.size());
  for (size_t i = 0; i < knots.size(); ++i)
    knots[i] = 1.0 - knots_s_[knots_s_.size() - 1 - i];
  return Ribbon(degree_s_, degree_h_, std::move(knots), knots_h_, std::move(net));
}

Ribbon Ribbon::with_net(Net control_net) const {
  return Ribbon(degree_s_, degree_h_, knots_s_, knots_h_, std::move(control_net));
}

Eigen::VectorXd bspline_basis(int degree, const std::vector<double> &knots, double t) {
  check_parameter(t, "t");
  const int n = static_cast<int>(knots.size()) - degree - 1;
  std::vector<double> unit(n);
  Eigen::VectorXd values(n);
  for (int i = 0; i < n; ++i) {
    std::fill(unit.begin(), unit.end(), 0.0);
    unit[i] = 1.0;
    values[i] = de_boor<double>(degree, knots, std::span<const double>(unit), t);
  }
  return values;
}

} // namespace ribbonpatch
