#pragma once

#include "ribbonpatch/types.hpp"

#include <vector>

namespace ribbonpatch {

/// Clamped knot vector of a Bézier segment: degree+1 zeros then degree+1 ones.
std::vector<double> bezier_knots(int degree);

/// Tensor-product B-spline ribbon R(s,h) attached to one domain side.
///
/// `control_net[i][j]` is indexed by i along s and j along h; column j = 0 is
/// the boundary row, column 1 the first tangent row. Knot vectors must be
/// clamped (end knots repeated degree+1 times) and are rescaled to [0,1] on
/// construction. A Bézier ribbon is the special case without interior knots.
class Ribbon {
public:
  using Net = std::vector<std::vector<Vec3>>;

  Ribbon(int degree_s, int degree_h, std::vector<double> knots_s, std::vector<double> knots_h, Net control_net);

  /// Bézier ribbon; degrees follow from the net dimensions.
  static Ribbon bezier(Net control_net);

  int degree_s() const { return degree_s_; }
  int degree_h() const { return degree_h_; }
  const std::vector<double> &knots_s() const { return knots_s_; }
  const std::vector<double> &knots_h() const { return knots_h_; }
  const Net &control_net() const { return net_; }
  int rows() const { return static_cast<int>(net_.size()); }   ///< control points along s
  int columns() const { return static_cast<int>(net_[0].size()); } ///< control points along h

  Vec3 eval(double s, double h) const;

  struct Partials {
    Vec3 ds;
    Vec3 dh;
  };
  Partials eval_partials(double s, double h) const;

  struct BoundaryData {
    Vec3 position;
    Vec3 cross_derivative;
  };
  /// Position R(s,0) and cross-derivative dR/dh at (s,0).
  BoundaryData boundary_data(double s) const;

  /// Same surface traversed with s -> 1 - s.
  Ribbon reversed_s() const;

  /// Copy with a replaced control net of the same shape.
  Ribbon with_net(Net control_net) const;

private:
  int degree_s_;
  int degree_h_;
  std::vector<double> knots_s_;
  std::vector<double> knots_h_;
  Net net_;
};

/// Value of every B-spline basis function of the given knot vector at t
/// (a dense vector; only degree+1 entries are non-zero).
Eigen::VectorXd bspline_basis(int degree, const std::vector<double> &knots, double t);

} // namespace ribbonpatch
