#pragma once

#include "igsp/geometry.hpp"

#include <cstdint>
#include <vector>

namespace igsp {

/// kd-tree over a point cloud for k-nearest-neighbor and radius queries.
/// The index keeps its own copy of the coordinates; queries are const and
/// safe to run concurrently. Results match a linear scan exactly:
/// radius queries use dist <= r, knn ties break toward the lower index.
class SpatialIndex {
 public:
  explicit SpatialIndex(const PointCloud& cloud);

  std::size_t size() const { return pts_.size(); }

  /// Indices of the k nearest points to q, ordered by increasing distance
  /// (ties by index). Returns fewer than k when the cloud is smaller.
  std::vector<std::uint32_t> knn(const Point3& q, std::size_t k) const;

  /// Indices of all points with distance(q, p) <= r, sorted by index.
  std::vector<std::uint32_t> radius(const Point3& q, double r) const;

 private:
  struct Node {
    double split = 0.0;
    std::int32_t axis = -1;  // -1 marks a leaf
    std::uint32_t begin = 0, end = 0;
    std::int32_t left = -1, right = -1;
  };

  std::int32_t build(std::uint32_t begin, std::uint32_t end);

  std::vector<Point3> pts_;
  std::vector<std::uint32_t> order_;  // permutation into pts_, grouped by node
  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
};

}  // namespace igsp
