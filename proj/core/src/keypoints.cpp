#include "igsp/keypoints.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace igsp {

DetectorConfig DetectorConfig::resolved(const PointCloud& c) const {
  DetectorConfig out = *this;
  if (out.nms_radius <= 0.0 || out.neighborhood_radius <= 0.0) {
    const double spacing = median_spacing(c).value;
    if (out.nms_radius <= 0.0) out.nms_radius = 4.0 * spacing;
    if (out.neighborhood_radius <= 0.0) out.neighborhood_radius = 6.0 * spacing;
  }
  return out;
}

std::vector<Keypoint> detect_keypoints(const PointCloud& c, const DetectorConfig& cfg) {
  const SpatialIndex index(c);
  return detect_keypoints(c, index, cfg);
}

std::vector<Keypoint> detect_keypoints(const PointCloud& c, const SpatialIndex& index,
                                       const DetectorConfig& cfg_in) {
  if (c.size() < 10) throw std::runtime_error("detect_keypoints: too few points for detection");
  const DetectorConfig cfg = cfg_in.resolved(c);
  if (!cfg.valid() || cfg.nms_radius <= 0.0 || cfg.neighborhood_radius <= 0.0)
    throw std::runtime_error("detect_keypoints: invalid detector config");

  const std::size_t n = c.size();
  std::vector<double> saliency(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto nbrs = index.radius(c.points[i], cfg.neighborhood_radius);
    if (nbrs.size() < 4) continue;  // covariance rank-deficient by count
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (auto j : nbrs) mean += c.points[j].vec();
    mean /= static_cast<double>(nbrs.size());
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (auto j : nbrs) {
      const Eigen::Vector3d d = c.points[j].vec() - mean;
      cov += d * d.transpose();
    }
    cov /= static_cast<double>(nbrs.size());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    const double l1 = eig.eigenvalues()(2);  // ascending order in Eigen
    const double l3 = eig.eigenvalues()(0);
    if (l1 > 0.0) saliency[i] = std::max(l3, 0.0) / l1;
  }

  double threshold = cfg.saliency_threshold;
  if (threshold < 0.0) {
    std::vector<double> sorted = saliency;
    std::nth_element(sorted.begin(), sorted.begin() + (sorted.size() * 3) / 4, sorted.end());
    threshold = sorted[(sorted.size() * 3) / 4];
  }

  // Candidates above threshold, strongest first; greedy NMS keeps a candidate
  // only when no stronger keypoint sits within nms_radius.
  std::vector<std::uint32_t> cand;
  for (std::size_t i = 0; i < n; ++i)
    if (saliency[i] > threshold) cand.push_back(static_cast<std::uint32_t>(i));
  std::sort(cand.begin(), cand.end(), [&](std::uint32_t a, std::uint32_t b) {
    return saliency[a] > saliency[b] || (saliency[a] == saliency[b] && a < b);
  });

  std::vector<Keypoint> out;
  std::vector<char> suppressed(n, 0);
  for (std::uint32_t i : cand) {
    if (suppressed[i]) continue;
    out.push_back(Keypoint{c.points[i], i, saliency[i]});
    for (auto j : index.radius(c.points[i], cfg.nms_radius)) suppressed[j] = 1;
  }
  return out;
}

}  // namespace igsp
