#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "meshsample/error.hpp"
#include "meshsample/format.hpp"
#include "meshsample/mesh.hpp"

namespace meshsample {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

inline bool parse_long(std::string_view s, long& out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path + "' for reading");
  return in;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_error, "cannot open '" + path + "' for writing");
  return out;
}

}  // namespace detail

// OBJ subset: `v x y z` and `f a b c ...` records. Polygons are fan
// triangulated from their first corner; `a/b/c` corner forms use only the
// position index; negative indices count back from the latest vertex.
// Other records are ignored. Weights start at 1.
inline Mesh parse_obj(std::istream& in) {
  std::vector<vec3> vertices;
  std::vector<tri3> triangles;
  std::vector<std::size_t> triangle_lines;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    const auto tokens = detail::split_ws(body);
    if (tokens.empty()) continue;

    if (tokens[0] == "v") {
      if (tokens.size() < 4) throw Error(ErrorCode::parse_error, "vertex needs 3 coordinates", line_no);
      vec3 p;
      if (!detail::parse_double(tokens[1], p.x) || !detail::parse_double(tokens[2], p.y) ||
          !detail::parse_double(tokens[3], p.z))
        throw Error(ErrorCode::parse_error, "bad vertex coordinate", line_no);
      vertices.push_back(p);
    } else if (tokens[0] == "f") {
      if (tokens.size() < 4) throw Error(ErrorCode::parse_error, "face needs at least 3 corners", line_no);
      std::vector<long> corners;
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        auto token = tokens[k];
        token = token.substr(0, token.find('/'));
        long index = 0;
        if (!detail::parse_long(token, index) || index == 0)
          throw Error(ErrorCode::parse_error, "bad face index '" + std::string(tokens[k]) + "'", line_no);
        if (index < 0) {
          index += static_cast<long>(vertices.size());
          if (index < 0)
            throw Error(ErrorCode::index_out_of_range, "relative index before first vertex", line_no);
        } else {
          --index;
        }
        corners.push_back(index);
      }
      for (std::size_t k = 1; k + 1 < corners.size(); ++k) {
        triangles.push_back({static_cast<std::size_t>(corners[0]), static_cast<std::size_t>(corners[k]),
                             static_cast<std::size_t>(corners[k + 1])});
        triangle_lines.push_back(line_no);
      }
    }
  }
  for (std::size_t t = 0; t < triangles.size(); ++t)
    for (auto index : triangles[t])
      if (index >= vertices.size())
        throw Error(ErrorCode::index_out_of_range,
                    "vertex " + std::to_string(index + 1) + " of " + std::to_string(vertices.size()),
                    triangle_lines[t]);
  return Mesh(std::move(vertices), std::move(triangles));
}

inline Mesh load_obj(const std::string& path) {
  auto in = detail::open_in(path);
  return parse_obj(in);
}

inline void write_obj(std::ostream& out, const Mesh& mesh) {
  for (const auto& p : mesh.vertices())
    out << "v " << format_double(p.x) << ' ' << format_double(p.y) << ' ' << format_double(p.z) << '\n';
  for (const auto& t : mesh.triangles()) out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

inline void write_obj(const std::string& path, const Mesh& mesh) {
  auto out = detail::open_out(path);
  write_obj(out, mesh);
  if (!out) throw Error(ErrorCode::io_error, "write to '" + path + "' failed");
}

// One non-negative decimal per line in vertex order; blank lines and `#`
// comments are skipped.
inline std::vector<double> parse_weights(std::istream& in, std::size_t vertex_count) {
  std::vector<double> weights;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = detail::trim(body);
    if (body.empty()) continue;
    double w = 0;
    if (!detail::parse_double(body, w) || !std::isfinite(w))
      throw Error(ErrorCode::parse_error, "bad weight '" + std::string(body) + "'", line_no);
    if (w < 0) throw Error(ErrorCode::negative_weight, "weight " + std::string(body), line_no);
    weights.push_back(w);
  }
  if (weights.size() != vertex_count)
    throw Error(ErrorCode::count_mismatch, "expected " + std::to_string(vertex_count) +
                                               " weights, got " + std::to_string(weights.size()));
  return weights;
}

inline Mesh load_weights(const std::string& path, const Mesh& mesh) {
  auto in = detail::open_in(path);
  return mesh.with_weights(parse_weights(in, mesh.vertex_count()));
}

enum class PointFormat { csv, ply };

struct Rgb {
  unsigned char r = 0;
  unsigned char g = 0;
  unsigned char b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

// HSV hue from 240 deg (blue, t = 0) down to 0 deg (red, t = 1), s = v = 1.
inline Rgb hue_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const double h = 4.0 * (1.0 - t);  // hue / 60 deg, in [0, 4]
  const int sector = std::min(static_cast<int>(h), 3);
  const double f = h - sector;
  auto byte = [](double x) { return static_cast<unsigned char>(std::lround(255.0 * x)); };
  switch (sector) {
    case 0: return {255, byte(f), 0};         // red -> yellow
    case 1: return {byte(1 - f), 255, 0};     // yellow -> green
    case 2: return {0, 255, byte(f)};         // green -> cyan
    default: return {0, byte(1 - f), 255};    // cyan -> blue
  }
}

// CSV: header `x,y,z,weight`. PLY: ascii 1.0, float position and uchar
// color, hue spanning the mesh-wide vertex weight range.
inline void write_points(std::ostream& out, const std::vector<BaryPoint>& points, const Mesh& mesh,
                         PointFormat format) {
  if (format == PointFormat::csv) {
    out << "x,y,z,weight\n";
    for (const auto& p : points)
      out << format_double(p.position.x) << ',' << format_double(p.position.y) << ','
          << format_double(p.position.z) << ',' << format_double(weight_at(mesh, p.triangle, p.u, p.v))
          << '\n';
    return;
  }

  const auto& w = mesh.weights();
  const double lo = w.empty() ? 0.0 : *std::min_element(w.begin(), w.end());
  const double hi = w.empty() ? 0.0 : *std::max_element(w.begin(), w.end());
  out << "ply\nformat ascii 1.0\nelement vertex " << points.size()
      << "\nproperty float x\nproperty float y\nproperty float z\n"
         "property uchar red\nproperty uchar green\nproperty uchar blue\nend_header\n";
  for (const auto& p : points) {
    const double weight = weight_at(mesh, p.triangle, p.u, p.v);
    const auto c = hue_color(hi > lo ? (weight - lo) / (hi - lo) : 0.5);
    out << format_float(static_cast<float>(p.position.x)) << ' '
        << format_float(static_cast<float>(p.position.y)) << ' '
        << format_float(static_cast<float>(p.position.z)) << ' ' << int{c.r} << ' ' << int{c.g} << ' '
        << int{c.b} << '\n';
  }
}

inline void write_points(const std::string& path, const std::vector<BaryPoint>& points, const Mesh& mesh,
                         PointFormat format) {
  auto out = detail::open_out(path);
  write_points(out, points, mesh, format);
  out.flush();
  if (!out) throw Error(ErrorCode::io_error, "write to '" + path + "' failed");
}

struct CsvPoint {
  vec3 position;
  double weight = 0;
};

inline std::vector<CsvPoint> read_points_csv(std::istream& in) {
  std::vector<CsvPoint> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) continue;
    if (detail::trim(line).empty()) continue;
    std::string_view rest = line;
    double fields[4];
    for (int k = 0; k < 4; ++k) {
      const auto comma = rest.find(',');
      const auto field = detail::trim(rest.substr(0, comma));
      if (!detail::parse_double(field, fields[k]) || (k < 3 && comma == std::string_view::npos))
        throw Error(ErrorCode::parse_error, "bad CSV point record", line_no);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    out.push_back({{fields[0], fields[1], fields[2]}, fields[3]});
  }
  return out;
}

inline std::vector<CsvPoint> read_points_csv(const std::string& path) {
  auto in = detail::open_in(path);
  return read_points_csv(in);
}

}  // namespace meshsample
