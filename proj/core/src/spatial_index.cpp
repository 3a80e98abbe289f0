#include "igsp/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace igsp {
namespace {

constexpr std::uint32_t kLeafSize = 16;

double coord(const Point3& p, int axis) {
  return axis == 0 ? p.x : (axis == 1 ? p.y : p.z);
}

double sq_dist(const Point3& a, const Point3& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}

}  // namespace

SpatialIndex::SpatialIndex(const PointCloud& cloud) : pts_(cloud.points) {
  order_.resize(pts_.size());
  std::iota(order_.begin(), order_.end(), 0u);
  if (!pts_.empty()) root_ = build(0, static_cast<std::uint32_t>(pts_.size()));
}

std::int32_t SpatialIndex::build(std::uint32_t begin, std::uint32_t end) {
  Node node;
  node.begin = begin;
  node.end = end;
  if (end - begin <= kLeafSize) {
    // Leaf order is ascending index so results are reproducible.
    std::sort(order_.begin() + begin, order_.begin() + end);
    nodes_.push_back(node);
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }

  Point3 lo = pts_[order_[begin]], hi = lo;
  for (std::uint32_t i = begin; i < end; ++i) {
    const Point3& p = pts_[order_[i]];
    lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y); lo.z = std::min(lo.z, p.z);
    hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y); hi.z = std::max(hi.z, p.z);
  }
  const double ex = hi.x - lo.x, ey = hi.y - lo.y, ez = hi.z - lo.z;
  int axis = 0;
  if (ey >= ex && ey >= ez) axis = 1;
  else if (ez >= ex && ez >= ey) axis = 2;
  if (ex == 0.0 && ey == 0.0 && ez == 0.0) {
    // All points coincide; splitting cannot make progress.
    std::sort(order_.begin() + begin, order_.begin() + end);
    nodes_.push_back(node);
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }

  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](std::uint32_t a, std::uint32_t b) {
                     const double ca = coord(pts_[a], axis), cb = coord(pts_[b], axis);
                     return ca < cb || (ca == cb && a < b);
                   });
  node.axis = axis;
  node.split = coord(pts_[order_[mid]], axis);

  nodes_.push_back(node);
  const auto self = static_cast<std::int32_t>(nodes_.size() - 1);
  const std::int32_t left = build(begin, mid);
  const std::int32_t right = build(mid, end);
  nodes_[self].left = left;
  nodes_[self].right = right;
  return self;
}

std::vector<std::uint32_t> SpatialIndex::knn(const Point3& q, std::size_t k) const {
  std::vector<std::uint32_t> result;
  if (k == 0 || pts_.empty()) return result;
  k = std::min(k, pts_.size());

  // Best candidates kept as a sorted array (k is small in every use here).
  struct Cand { double d2; std::uint32_t idx; };
  std::vector<Cand> best;
  best.reserve(k + 1);
  auto worse = [](const Cand& a, const Cand& b) {
    return a.d2 < b.d2 || (a.d2 == b.d2 && a.idx < b.idx);
  };
  auto offer = [&](std::uint32_t idx) {
    Cand c{sq_dist(q, pts_[idx]), idx};
    if (best.size() == k && !worse(c, best.back())) return;
    best.insert(std::upper_bound(best.begin(), best.end(), c, worse), c);
    if (best.size() > k) best.pop_back();
  };

  auto visit = [&](auto&& self, std::int32_t ni) -> void {
    const Node& node = nodes_[ni];
    if (node.axis < 0) {
      for (std::uint32_t i = node.begin; i < node.end; ++i) offer(order_[i]);
      return;
    }
    const double diff = coord(q, node.axis) - node.split;
    const std::int32_t near = diff < 0 ? node.left : node.right;
    const std::int32_t far = diff < 0 ? node.right : node.left;
    self(self, near);
    if (best.size() < k || diff * diff <= best.back().d2) self(self, far);
  };
  visit(visit, root_);

  result.reserve(best.size());
  for (const Cand& c : best) result.push_back(c.idx);
  return result;
}

std::vector<std::uint32_t> SpatialIndex::radius(const Point3& q, double r) const {
  std::vector<std::uint32_t> result;
  if (pts_.empty() || r < 0.0) return result;
  const double r2 = r * r;

  auto visit = [&](auto&& self, std::int32_t ni) -> void {
    const Node& node = nodes_[ni];
    if (node.axis < 0) {
      for (std::uint32_t i = node.begin; i < node.end; ++i)
        if (sq_dist(q, pts_[order_[i]]) <= r2) result.push_back(order_[i]);
      return;
    }
    const double diff = coord(q, node.axis) - node.split;
    if (diff <= r) self(self, node.left);   // split plane within reach on the low side
    if (-diff <= r) self(self, node.right);
  };
  visit(visit, root_);

  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace igsp
