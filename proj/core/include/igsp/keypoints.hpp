#pragma once

#include "igsp/geometry.hpp"
#include "igsp/spatial_index.hpp"

#include <cstdint>
#include <vector>

namespace igsp {

/// A salient point selected by the detector.
struct Keypoint {
  Point3 position;
  std::uint32_t source_index = 0;  // index into the originating cloud
  double saliency = 0.0;           // curvature ratio lambda3 / lambda1, >= 0
};

struct DetectorConfig {
  double nms_radius = 0.0;          // r_k; <= 0 selects 4 x median spacing
  double neighborhood_radius = 0.0; // r_d; <= 0 selects 6 x median spacing
  double saliency_threshold = -1.0; // < 0 selects the 75th saliency percentile
  int radial_bins = 4;              // n_r
  int angular_bins = 16;            // n_a; descriptor length = 2 * n_r * n_a

  /// Resolves the <= 0 / < 0 auto fields against a cloud's point density.
  /// saliency_threshold stays in auto mode (resolved inside detection).
  DetectorConfig resolved(const PointCloud& c) const;

  bool valid() const {
    return radial_bins > 0 && angular_bins > 0;
  }
};

/// Curvature keypoints: saliency is lambda3/lambda1 of the covariance of the
/// neighborhood_radius ball (lambda1 >= lambda2 >= lambda3); points must be
/// strict local maxima of saliency within nms_radius and strictly above the
/// threshold. Output is sorted by descending saliency (ties by index).
/// Throws on clouds with fewer than 10 points.
std::vector<Keypoint> detect_keypoints(const PointCloud& c, const DetectorConfig& cfg);

/// Same as above but reuses a prebuilt index over c.
std::vector<Keypoint> detect_keypoints(const PointCloud& c, const SpatialIndex& index,
                                       const DetectorConfig& cfg);

}  // namespace igsp
