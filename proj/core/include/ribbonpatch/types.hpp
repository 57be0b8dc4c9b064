#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <stdexcept>
#include <string>

namespace ribbonpatch {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

/// Symmetric sparse operator (stiffness, mass, boundary mass). Stored in full,
/// column-major, so both triangles are present.
using SparseMatrix = Eigen::SparseMatrix<double>;

/// One row per vertex (or per boundary vertex), one column per coordinate.
using PointMatrix = Eigen::Matrix<double, Eigen::Dynamic, 3>;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class MeshError : public Error {
public:
  enum class Kind { Parse, NonManifoldEdge, DegenerateTriangle, Disconnected, Topology, SideAssignment };

  MeshError(Kind kind, const std::string &message) : Error(message), kind_(kind) {}

  Kind kind() const { return kind_; }
  static const char *kind_name(Kind kind);

private:
  Kind kind_;
};

class RibbonError : public Error {
public:
  using Error::Error;
};

/// Numerical failure of a linear solve; carries the achieved relative residual
/// (NaN when the factorization itself failed).
class SolverError : public Error {
public:
  SolverError(const std::string &message, double residual) : Error(message), residual_(residual) {}
  double residual() const { return residual_; }

private:
  double residual_;
};

} // namespace ribbonpatch
