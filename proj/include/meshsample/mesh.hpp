#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "meshsample/error.hpp"

namespace meshsample {

struct vec3 {
  double x = 0;
  double y = 0;
  double z = 0;

  friend bool operator==(const vec3&, const vec3&) = default;
};

inline vec3 operator+(const vec3& a, const vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline vec3 operator-(const vec3& a, const vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline vec3 operator*(double s, const vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
inline vec3 operator*(const vec3& a, double s) { return s * a; }
inline double dot(const vec3& a, const vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline vec3 cross(const vec3& a, const vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double length(const vec3& a) { return std::sqrt(dot(a, a)); }

// Vertex indices in (u, v, w) order: barycentric u weights the first
// vertex, v the second, w = 1 - u - v the third.
using tri3 = std::array<std::size_t, 3>;

struct BaryPoint {
  std::size_t triangle = 0;
  double u = 0;
  double v = 0;
  vec3 position;
};

// Indexed triangle mesh with one non-negative density weight per vertex.
// Immutable once constructed; every constructor validates the invariants.
class Mesh {
 public:
  Mesh() = default;

  Mesh(std::vector<vec3> vertices, std::vector<tri3> triangles)
      : vertices_(std::move(vertices)),
        triangles_(std::move(triangles)),
        weights_(vertices_.size(), 1.0) {
    validate();
  }

  Mesh(std::vector<vec3> vertices, std::vector<tri3> triangles, std::vector<double> weights)
      : vertices_(std::move(vertices)),
        triangles_(std::move(triangles)),
        weights_(std::move(weights)) {
    validate();
  }

  const std::vector<vec3>& vertices() const noexcept { return vertices_; }
  const std::vector<tri3>& triangles() const noexcept { return triangles_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t triangle_count() const noexcept { return triangles_.size(); }

  // Same geometry, new weights.
  Mesh with_weights(std::vector<double> weights) const {
    return Mesh(vertices_, triangles_, std::move(weights));
  }

 private:
  void validate() const {
    if (weights_.size() != vertices_.size())
      throw Error(ErrorCode::count_mismatch,
                  "expected " + std::to_string(vertices_.size()) + " weights, got " +
                      std::to_string(weights_.size()));
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      if (!std::isfinite(weights_[i]))
        throw Error(ErrorCode::invalid_mesh, "weight " + std::to_string(i) + " is not finite");
      if (weights_[i] < 0)
        throw Error(ErrorCode::negative_weight, "weight " + std::to_string(i) + " is negative");
    }
    for (std::size_t t = 0; t < triangles_.size(); ++t)
      for (auto index : triangles_[t])
        if (index >= vertices_.size())
          throw Error(ErrorCode::index_out_of_range,
                      "triangle " + std::to_string(t) + " references vertex " +
                          std::to_string(index));
  }

  std::vector<vec3> vertices_;
  std::vector<tri3> triangles_;
  std::vector<double> weights_;
};

inline bool valid_bary(double u, double v, double slack = 1e-12) {
  return u >= -slack && v >= -slack && u + v <= 1 + slack;
}

// Half the norm of the edge cross product; 0 for degenerate triangles.
inline double triangle_area(const Mesh& mesh, std::size_t i) {
  const auto& t = mesh.triangles()[i];
  const auto& p = mesh.vertices();
  return 0.5 * length(cross(p[t[1]] - p[t[0]], p[t[2]] - p[t[0]]));
}

inline vec3 bary_to_position(const Mesh& mesh, std::size_t i, double u, double v) {
  MESHSAMPLE_EXPECTS(i < mesh.triangle_count());
  MESHSAMPLE_EXPECTS(valid_bary(u, v));
  const auto& t = mesh.triangles()[i];
  const auto& p = mesh.vertices();
  const double w = 1.0 - u - v;
  return u * p[t[0]] + v * p[t[1]] + w * p[t[2]];
}

// Barycentric interpolation of the vertex weights; exact at the vertices.
inline double weight_at(const Mesh& mesh, std::size_t i, double u, double v) {
  MESHSAMPLE_EXPECTS(i < mesh.triangle_count());
  MESHSAMPLE_EXPECTS(valid_bary(u, v));
  const auto& t = mesh.triangles()[i];
  const auto& w = mesh.weights();
  return u * w[t[0]] + v * w[t[1]] + (1.0 - u - v) * w[t[2]];
}

inline double mean_weight(const Mesh& mesh, std::size_t i) {
  const auto& t = mesh.triangles()[i];
  const auto& w = mesh.weights();
  return (w[t[0]] + w[t[1]] + w[t[2]]) / 3.0;
}

// Linear fields attain their maximum at a vertex.
inline double max_weight(const Mesh& mesh, std::size_t i) {
  const auto& t = mesh.triangles()[i];
  const auto& w = mesh.weights();
  return std::max({w[t[0]], w[t[1]], w[t[2]]});
}

inline std::array<double, 3> vertex_weights(const Mesh& mesh, std::size_t i) {
  const auto& t = mesh.triangles()[i];
  const auto& w = mesh.weights();
  return {w[t[0]], w[t[1]], w[t[2]]};
}

}  // namespace meshsample
