#pragma once

#include "igsp/geometry.hpp"

#include <iosfwd>
#include <string>

namespace igsp {

enum class CloudFormat {
  kXyz,         // whitespace-separated "x y z" per line, extra columns ignored
  kPlyAscii,    // PLY "format ascii 1.0"
  kPlyBinaryLe, // PLY "format binary_little_endian 1.0"
};

/// Picks a format from the file extension: .xyz / .txt -> kXyz, .ply -> binary PLY
/// for writing; loading sniffs the PLY header's declared format.
CloudFormat format_from_path(const std::string& path, bool for_writing);

/// Parses a point cloud. Throws std::runtime_error naming the file and the
/// line (text) or byte offset (binary) on malformed input. PLY faces, colors
/// and other non-position vertex attributes are skipped with a warning on
/// stderr. XYZ never carries normals; PLY reads nx/ny/nz when declared.
PointCloud load_cloud(const std::string& path, CloudFormat format);
PointCloud load_cloud(const std::string& path);  // format from extension/header

/// Writes a cloud. Binary PLY stores double precision (lossless round-trip);
/// ASCII formats use 9 significant digits (<= 1e-6 relative error).
void save_cloud(const PointCloud& c, const std::string& path, CloudFormat format);
void save_cloud(const PointCloud& c, const std::string& path);

}  // namespace igsp
