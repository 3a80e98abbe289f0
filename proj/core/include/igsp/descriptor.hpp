#pragma once

#include "igsp/keypoints.hpp"

#include <array>
#include <bitset>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace igsp {

inline constexpr std::size_t kDescriptorBits = 128;

/// Fixed-length binary local shape descriptor compared by Hamming distance.
/// Layout: cell = radial_bin * angular_bins + angular_bin; bit[cell] encodes
/// the occupancy statistic, bit[cells + cell] the signed-height statistic.
struct BinaryDescriptor {
  std::bitset<kDescriptorBits> bits;
  bool valid = false;

  std::array<std::uint8_t, kDescriptorBits / 8> packed() const;
  static BinaryDescriptor unpack(const std::array<std::uint8_t, kDescriptorBits / 8>& bytes,
                                 bool valid);
};

/// Builds the descriptor of k's neighborhood_radius ball:
/// a covariance local reference frame (axis signs disambiguated toward the
/// neighborhood centroid, ties toward global +z / +y / +x), polar binning of
/// the tangent-plane projection into radial x angular cells, then per-cell
/// point count and mean signed height binarized against their medians.
/// valid=false when the neighborhood has < 10 points or the covariance
/// spectrum is too degenerate to orient a frame.
BinaryDescriptor compute_descriptor(const PointCloud& c, const Keypoint& k,
                                    const DetectorConfig& cfg);
BinaryDescriptor compute_descriptor(const PointCloud& c, const SpatialIndex& index,
                                    const Keypoint& k, const DetectorConfig& cfg);

/// All descriptors for a keypoint set, index-aligned. Deterministic.
std::vector<BinaryDescriptor> compute_descriptors(const PointCloud& c,
                                                  const std::vector<Keypoint>& kps,
                                                  const DetectorConfig& cfg);

/// Normalized Hamming distance popcount(a xor b) / 128 in [0, 1].
/// Throws when either descriptor is invalid.
double hamming(const BinaryDescriptor& a, const BinaryDescriptor& b);

/// Sidecar cache of keypoints + descriptors ("IGSPKD1", little-endian counts,
/// packed bits) so detection and description can be reused across runs.
void save_keypoint_cache(const std::string& path, const std::vector<Keypoint>& kps,
                         const std::vector<BinaryDescriptor>& descs);
std::pair<std::vector<Keypoint>, std::vector<BinaryDescriptor>> load_keypoint_cache(
    const std::string& path);

}  // namespace igsp
