#include "igsp/cloud_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace igsp {
namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::runtime_error(path + ": " + what);
}

[[noreturn]] void fail_line(const std::string& path, std::size_t line, const std::string& what) {
  fail(path, "line " + std::to_string(line) + ": " + what);
}

[[noreturn]] void fail_byte(const std::string& path, std::size_t offset, const std::string& what) {
  fail(path, "byte " + std::to_string(offset) + ": " + what);
}

bool parse_double(std::string_view tok, double& out) {
  const char* end = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && p == end;
}

std::string lower_ext(const std::string& path) {
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos) return {};
  std::string ext = path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

// ---------------------------------------------------------------- XYZ

PointCloud load_xyz(const std::string& path, std::istream& in) {
  PointCloud cloud;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tx, ty, tz;
    if (!(ls >> tx)) continue;  // blank line
    if (!(ls >> ty >> tz))
      fail_line(path, lineno, "expected at least 3 columns");
    Point3 p;
    if (!parse_double(tx, p.x) || !parse_double(ty, p.y) || !parse_double(tz, p.z))
      fail_line(path, lineno, "non-numeric coordinate");
    cloud.points.push_back(p);  // trailing columns ignored
  }
  return cloud;
}

void save_xyz(const PointCloud& c, const std::string& path, std::ostream& out) {
  out.precision(9);
  for (const Point3& p : c.points) out << p.x << ' ' << p.y << ' ' << p.z << '\n';
  if (!out) fail(path, "write failed");
}

// ---------------------------------------------------------------- PLY

enum class PlyType { kChar, kUChar, kShort, kUShort, kInt, kUInt, kFloat, kDouble };

bool ply_type_from(const std::string& token, PlyType& out) {
  if (token == "char" || token == "int8") out = PlyType::kChar;
  else if (token == "uchar" || token == "uint8") out = PlyType::kUChar;
  else if (token == "short" || token == "int16") out = PlyType::kShort;
  else if (token == "ushort" || token == "uint16") out = PlyType::kUShort;
  else if (token == "int" || token == "int32") out = PlyType::kInt;
  else if (token == "uint" || token == "uint32") out = PlyType::kUInt;
  else if (token == "float" || token == "float32") out = PlyType::kFloat;
  else if (token == "double" || token == "float64") out = PlyType::kDouble;
  else return false;
  return true;
}

std::size_t ply_type_size(PlyType t) {
  switch (t) {
    case PlyType::kChar: case PlyType::kUChar: return 1;
    case PlyType::kShort: case PlyType::kUShort: return 2;
    case PlyType::kInt: case PlyType::kUInt: case PlyType::kFloat: return 4;
    case PlyType::kDouble: return 8;
  }
  return 0;
}

struct PlyProperty {
  std::string name;
  PlyType type = PlyType::kFloat;
  bool is_list = false;
  PlyType count_type = PlyType::kUChar;
};

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> properties;
};

struct PlyHeader {
  bool binary = false;
  std::vector<PlyElement> elements;
  std::size_t end_offset = 0;  // byte offset just past "end_header\n"
  std::size_t end_line = 0;
};

PlyHeader parse_ply_header(const std::string& path, std::istream& in) {
  PlyHeader header;
  std::string line;
  std::size_t lineno = 0;

  auto next_line = [&]() -> std::string& {
    if (!std::getline(in, line)) fail_line(path, lineno, "unexpected end of header");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };

  if (next_line() != "ply") fail_line(path, lineno, "missing 'ply' magic");
  bool have_format = false;
  for (;;) {
    next_line();
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "comment" || kw == "obj_info" || kw.empty()) continue;
    if (kw == "format") {
      std::string fmt, version;
      ls >> fmt >> version;
      if (fmt == "ascii") header.binary = false;
      else if (fmt == "binary_little_endian") header.binary = true;
      else fail_line(path, lineno, "unsupported PLY format '" + fmt + "'");
      have_format = true;
    } else if (kw == "element") {
      PlyElement el;
      if (!(ls >> el.name >> el.count)) fail_line(path, lineno, "malformed element");
      header.elements.push_back(el);
    } else if (kw == "property") {
      if (header.elements.empty()) fail_line(path, lineno, "property before element");
      PlyProperty prop;
      std::string t1;
      ls >> t1;
      if (t1 == "list") {
        prop.is_list = true;
        std::string tc, te;
        ls >> tc >> te >> prop.name;
        if (!ply_type_from(tc, prop.count_type) || !ply_type_from(te, prop.type))
          fail_line(path, lineno, "unsupported PLY property type");
      } else {
        ls >> prop.name;
        if (!ply_type_from(t1, prop.type))
          fail_line(path, lineno, "unsupported PLY property type '" + t1 + "'");
      }
      if (prop.name.empty()) fail_line(path, lineno, "malformed property");
      header.elements.back().properties.push_back(prop);
    } else if (kw == "end_header") {
      break;
    } else {
      fail_line(path, lineno, "unknown header keyword '" + kw + "'");
    }
  }
  if (!have_format) fail_line(path, lineno, "missing format declaration");
  header.end_offset = static_cast<std::size_t>(in.tellg());
  header.end_line = lineno;
  return header;
}

double read_binary_scalar(const std::string& path, std::istream& in, PlyType t,
                          std::size_t& offset) {
  unsigned char buf[8];
  const std::size_t n = ply_type_size(t);
  if (!in.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(n)))
    fail_byte(path, offset, "unexpected end of binary data");
  offset += n;
  // Little-endian host assumed for x86-64/aarch64 targets; bytes are LE on disk.
  switch (t) {
    case PlyType::kChar: { std::int8_t v; std::memcpy(&v, buf, 1); return v; }
    case PlyType::kUChar: { std::uint8_t v; std::memcpy(&v, buf, 1); return v; }
    case PlyType::kShort: { std::int16_t v; std::memcpy(&v, buf, 2); return v; }
    case PlyType::kUShort: { std::uint16_t v; std::memcpy(&v, buf, 2); return v; }
    case PlyType::kInt: { std::int32_t v; std::memcpy(&v, buf, 4); return v; }
    case PlyType::kUInt: { std::uint32_t v; std::memcpy(&v, buf, 4); return v; }
    case PlyType::kFloat: { float v; std::memcpy(&v, buf, 4); return v; }
    case PlyType::kDouble: { double v; std::memcpy(&v, buf, 8); return v; }
  }
  return 0.0;
}

PointCloud load_ply(const std::string& path, std::istream& in, int require_binary) {
  const PlyHeader header = parse_ply_header(path, in);
  if (require_binary >= 0 && header.binary != (require_binary == 1))
    fail(path, std::string("header declares ") + (header.binary ? "binary" : "ascii") +
                   " but the requested format is " + (require_binary ? "binary" : "ascii"));
  PointCloud cloud;
  std::size_t lineno = header.end_line;
  std::size_t offset = header.end_offset;

  for (const PlyElement& el : header.elements) {
    const bool is_vertex = el.name == "vertex";
    // Slot per property: 0..2 xyz, 3..5 normals, -1 skipped.
    std::vector<int> slot(el.properties.size(), -1);
    bool has_xyz[3] = {false, false, false};
    bool has_n[3] = {false, false, false};
    if (is_vertex) {
      bool warned = false;
      for (std::size_t pi = 0; pi < el.properties.size(); ++pi) {
        const PlyProperty& prop = el.properties[pi];
        static const char* names[6] = {"x", "y", "z", "nx", "ny", "nz"};
        for (int s = 0; s < 6; ++s) {
          if (prop.name == names[s] && !prop.is_list) {
            if (prop.type != PlyType::kFloat && prop.type != PlyType::kDouble)
              fail(path, "vertex property '" + prop.name + "' must be float or double");
            slot[pi] = s;
            (s < 3 ? has_xyz[s] : has_n[s - 3]) = true;
          }
        }
        if (slot[pi] == -1 && !warned) {
          std::cerr << "warning: " << path << ": skipping vertex attribute '"
                    << prop.name << "'\n";
          warned = true;
        }
      }
      if (!has_xyz[0] || !has_xyz[1] || !has_xyz[2])
        fail(path, "vertex element lacks x/y/z properties");
    } else if (el.count > 0) {
      std::cerr << "warning: " << path << ": skipping element '" << el.name << "' ("
                << el.count << " rows)\n";
    }
    const bool want_normals = has_n[0] && has_n[1] && has_n[2];

    for (std::size_t row = 0; row < el.count; ++row) {
      double vals[6] = {0, 0, 0, 0, 0, 0};
      if (header.binary) {
        for (std::size_t pi = 0; pi < el.properties.size(); ++pi) {
          const PlyProperty& prop = el.properties[pi];
          if (prop.is_list) {
            const double n = read_binary_scalar(path, in, prop.count_type, offset);
            if (n < 0 || n > 1e9) fail_byte(path, offset, "implausible list count");
            for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j)
              read_binary_scalar(path, in, prop.type, offset);
          } else {
            const double v = read_binary_scalar(path, in, prop.type, offset);
            if (slot[pi] >= 0) vals[slot[pi]] = v;
          }
        }
      } else {
        std::string line;
        if (!std::getline(in, line)) fail_line(path, lineno, "unexpected end of data");
        ++lineno;
        std::istringstream ls(line);
        for (std::size_t pi = 0; pi < el.properties.size(); ++pi) {
          const PlyProperty& prop = el.properties[pi];
          std::size_t reps = 1;
          if (prop.is_list) {
            std::string tok;
            if (!(ls >> tok)) fail_line(path, lineno, "missing list count");
            double n;
            if (!parse_double(tok, n) || n < 0) fail_line(path, lineno, "bad list count");
            reps = static_cast<std::size_t>(n);
          }
          for (std::size_t j = 0; j < reps; ++j) {
            std::string tok;
            if (!(ls >> tok)) fail_line(path, lineno, "missing property value");
            double v;
            if (!parse_double(tok, v)) fail_line(path, lineno, "non-numeric token '" + tok + "'");
            if (!prop.is_list && slot[pi] >= 0) vals[slot[pi]] = v;
          }
        }
      }
      if (is_vertex) {
        cloud.points.emplace_back(vals[0], vals[1], vals[2]);
        if (want_normals) cloud.normals.emplace_back(vals[3], vals[4], vals[5]);
      }
    }
  }
  return cloud;
}

void save_ply(const PointCloud& c, const std::string& path, std::ostream& out, bool binary) {
  out << "ply\n"
      << (binary ? "format binary_little_endian 1.0\n" : "format ascii 1.0\n")
      << "element vertex " << c.points.size() << "\n"
      << "property double x\nproperty double y\nproperty double z\n";
  if (c.has_normals())
    out << "property double nx\nproperty double ny\nproperty double nz\n";
  out << "end_header\n";

  for (std::size_t i = 0; i < c.points.size(); ++i) {
    double vals[6] = {c.points[i].x, c.points[i].y, c.points[i].z, 0, 0, 0};
    std::size_t n = 3;
    if (c.has_normals()) {
      vals[3] = c.normals[i].x;
      vals[4] = c.normals[i].y;
      vals[5] = c.normals[i].z;
      n = 6;
    }
    if (binary) {
      out.write(reinterpret_cast<const char*>(vals), static_cast<std::streamsize>(8 * n));
    } else {
      out.precision(9);
      for (std::size_t j = 0; j < n; ++j) out << vals[j] << (j + 1 < n ? ' ' : '\n');
    }
  }
  if (!out) fail(path, "write failed");
}

}  // namespace

CloudFormat format_from_path(const std::string& path, bool for_writing) {
  const std::string ext = lower_ext(path);
  if (ext == "ply") return for_writing ? CloudFormat::kPlyBinaryLe : CloudFormat::kPlyAscii;
  return CloudFormat::kXyz;
}

PointCloud load_cloud(const std::string& path, CloudFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open file");
  if (format == CloudFormat::kXyz) return load_xyz(path, in);
  return load_ply(path, in, format == CloudFormat::kPlyBinaryLe ? 1 : 0);
}

PointCloud load_cloud(const std::string& path) {
  if (format_from_path(path, /*for_writing=*/false) == CloudFormat::kXyz)
    return load_cloud(path, CloudFormat::kXyz);
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open file");
  return load_ply(path, in, -1);  // header decides ascii vs binary
}

void save_cloud(const PointCloud& c, const std::string& path, CloudFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(path, "cannot open file for writing");
  switch (format) {
    case CloudFormat::kXyz: save_xyz(c, path, out); break;
    case CloudFormat::kPlyAscii: save_ply(c, path, out, false); break;
    case CloudFormat::kPlyBinaryLe: save_ply(c, path, out, true); break;
  }
}

void save_cloud(const PointCloud& c, const std::string& path) {
  save_cloud(c, path, format_from_path(path, /*for_writing=*/true));
}

}  // namespace igsp
