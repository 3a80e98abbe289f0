#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace igsp {

/// A single 3D point in scene length units.
struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Point3() = default;
  Point3(double px, double py, double pz) : x(px), y(py), z(pz) {}
  explicit Point3(const Eigen::Vector3d& v) : x(v.x()), y(v.y()), z(v.z()) {}

  Eigen::Vector3d vec() const { return {x, y, z}; }
  bool finite() const;

  friend bool operator==(const Point3& a, const Point3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

double distance(const Point3& a, const Point3& b);

/// Ordered point set with optional per-point unit normals.
/// Normals, when present, are index-aligned with points.
struct PointCloud {
  std::vector<Point3> points;
  std::vector<Point3> normals;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool has_normals() const { return !normals.empty(); }

  /// Axis-aligned bounding-box diagonal length. Zero for clouds of < 2 points.
  double bounding_diagonal() const;

  /// Checks coordinate finiteness and normal cardinality/unit-length (1e-6).
  bool valid() const;
};

/// Proper rigid motion x -> R*x + t. det(R) = +1, R orthonormal.
struct RigidTransform {
  Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
  Eigen::Vector3d t = Eigen::Vector3d::Zero();

  static RigidTransform identity() { return {}; }

  /// Rotation about a (non-zero) axis by angle in radians, zero translation.
  static RigidTransform rotation(const Eigen::Vector3d& axis, double angle_rad);
  static RigidTransform translation(const Eigen::Vector3d& t);

  Eigen::Vector3d operator()(const Eigen::Vector3d& p) const { return R * p + t; }
  Point3 operator()(const Point3& p) const { return Point3(R * p.vec() + t); }

  /// R orthonormal and det(R) = +1 within tol per entry.
  bool is_valid(double tol = 1e-9) const;

  /// 4x4 homogeneous matrix, row-major flattening order.
  Eigen::Matrix4d matrix() const;
  static RigidTransform from_matrix(const Eigen::Matrix4d& m);
};

/// Composition: result applies b first, then a, i.e. result(x) = a(b(x)).
RigidTransform compose(const RigidTransform& a, const RigidTransform& b);

RigidTransform inverse(const RigidTransform& T);

/// Maps every point by R*p + t; normals (when present) by R only.
PointCloud apply(const RigidTransform& T, const PointCloud& c);

struct SpacingStats {
  double value = 0.0;     // median nearest-neighbor distance
  bool degenerate = false; // > 50% of nearest-neighbor distances are zero
};

/// Median over all points of the distance to their nearest neighbor.
/// Throws on clouds with fewer than 2 points.
SpacingStats median_spacing(const PointCloud& c);

}  // namespace igsp
