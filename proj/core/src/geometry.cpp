#include "igsp/geometry.hpp"

#include "igsp/spatial_index.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace igsp {

bool Point3::finite() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
}

double distance(const Point3& a, const Point3& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double PointCloud::bounding_diagonal() const {
  if (points.size() < 2) return 0.0;
  Eigen::Vector3d lo = points.front().vec(), hi = lo;
  for (const Point3& p : points) {
    lo = lo.cwiseMin(p.vec());
    hi = hi.cwiseMax(p.vec());
  }
  return (hi - lo).norm();
}

bool PointCloud::valid() const {
  for (const Point3& p : points)
    if (!p.finite()) return false;
  if (!normals.empty()) {
    if (normals.size() != points.size()) return false;
    for (const Point3& n : normals) {
      if (!n.finite()) return false;
      if (std::abs(n.vec().norm() - 1.0) > 1e-6) return false;
    }
  }
  return true;
}

RigidTransform RigidTransform::rotation(const Eigen::Vector3d& axis, double angle_rad) {
  RigidTransform T;
  T.R = Eigen::AngleAxisd(angle_rad, axis.normalized()).toRotationMatrix();
  return T;
}

RigidTransform RigidTransform::translation(const Eigen::Vector3d& t) {
  RigidTransform T;
  T.t = t;
  return T;
}

bool RigidTransform::is_valid(double tol) const {
  if (!R.allFinite() || !t.allFinite()) return false;
  const Eigen::Matrix3d gram = R.transpose() * R;
  if ((gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > tol) return false;
  return std::abs(R.determinant() - 1.0) <= tol;
}

Eigen::Matrix4d RigidTransform::matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = R;
  m.topRightCorner<3, 1>() = t;
  return m;
}

RigidTransform RigidTransform::from_matrix(const Eigen::Matrix4d& m) {
  RigidTransform T;
  T.R = m.topLeftCorner<3, 3>();
  T.t = m.topRightCorner<3, 1>();
  return T;
}

RigidTransform compose(const RigidTransform& a, const RigidTransform& b) {
  RigidTransform out;
  out.R = a.R * b.R;
  out.t = a.R * b.t + a.t;
  return out;
}

RigidTransform inverse(const RigidTransform& T) {
  RigidTransform out;
  out.R = T.R.transpose();
  out.t = -(out.R * T.t);
  return out;
}

PointCloud apply(const RigidTransform& T, const PointCloud& c) {
  PointCloud out;
  out.points.reserve(c.points.size());
  for (const Point3& p : c.points) out.points.push_back(T(p));
  out.normals.reserve(c.normals.size());
  for (const Point3& n : c.normals) out.normals.push_back(Point3(T.R * n.vec()));
  return out;
}

SpacingStats median_spacing(const PointCloud& c) {
  if (c.size() < 2) throw std::runtime_error("median_spacing: insufficient points");
  SpatialIndex index(c);
  std::vector<double> nn(c.size());
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto two = index.knn(c.points[i], 2);  // self plus nearest other
    nn[i] = distance(c.points[i], c.points[two[1]]);
    if (nn[i] == 0.0) ++zeros;
  }
  std::nth_element(nn.begin(), nn.begin() + nn.size() / 2, nn.end());
  SpacingStats s;
  s.value = nn[nn.size() / 2];
  s.degenerate = zeros * 2 > c.size();
  return s;
}

}  // namespace igsp
