#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include "meshsample/error.hpp"
#include "meshsample/mesh.hpp"

namespace meshsample {

// |cos(x/L) cos(y/L) cos(z/L)| at each vertex.
inline std::vector<double> periodic_weights(const Mesh& mesh, double length_scale) {
  if (!(length_scale > 0)) throw Error(ErrorCode::invalid_argument, "length scale must be > 0");
  std::vector<double> out;
  out.reserve(mesh.vertex_count());
  for (const auto& p : mesh.vertices())
    out.push_back(std::fabs(std::cos(p.x / length_scale) * std::cos(p.y / length_scale) *
                            std::cos(p.z / length_scale)));
  return out;
}

struct AngleDeficits {
  std::vector<double> deficit;      // 2 pi - sum of incident corner angles
  std::vector<double> area_third;   // one third of the incident triangle area
  std::vector<bool> interior;       // every incident edge has exactly two faces
};

namespace detail {
inline double corner_angle(const vec3& at, const vec3& a, const vec3& b) {
  const vec3 e0 = a - at;
  const vec3 e1 = b - at;
  return std::atan2(length(cross(e0, e1)), dot(e0, e1));
}
}  // namespace detail

inline AngleDeficits angle_deficits(const Mesh& mesh) {
  const std::size_t n = mesh.vertex_count();
  AngleDeficits out;
  out.deficit.assign(n, 2 * std::numbers::pi);
  out.area_third.assign(n, 0.0);
  out.interior.assign(n, false);

  std::vector<int> faces(n, 0);
  std::map<std::pair<std::size_t, std::size_t>, int> edge_faces;
  const auto& p = mesh.vertices();
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles()[t];
    const double third = triangle_area(mesh, t) / 3.0;
    for (int k = 0; k < 3; ++k) {
      const std::size_t a = tri[k];
      const std::size_t b = tri[(k + 1) % 3];
      const std::size_t c = tri[(k + 2) % 3];
      out.deficit[a] -= detail::corner_angle(p[a], p[b], p[c]);
      out.area_third[a] += third;
      ++faces[a];
      ++edge_faces[std::minmax(a, b)];
    }
  }
  for (std::size_t i = 0; i < n; ++i) out.interior[i] = faces[i] > 0;
  for (const auto& [edge, count] : edge_faces)
    if (count != 2) out.interior[edge.first] = out.interior[edge.second] = false;
  return out;
}

// Area-normalized absolute angle deficit, a discrete Gaussian curvature
// magnitude. Boundary, non-manifold and isolated vertices get 0.
inline std::vector<double> curvature_weights(const Mesh& mesh) {
  const auto d = angle_deficits(mesh);
  std::vector<double> out(mesh.vertex_count(), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i)
    if (d.interior[i] && d.area_third[i] > 0) out[i] = std::fabs(d.deficit[i]) / d.area_third[i];
  return out;
}

}  // namespace meshsample
