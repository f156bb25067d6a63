#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "meshsample/error.hpp"
#include "meshsample/mesh.hpp"

namespace meshsample {

// Per-triangle quantities needed by both samplers plus the normalized
// cumulative selection distribution.
struct TriangleTable {
  std::vector<double> cdf;
  std::vector<double> area;
  std::vector<double> mean_weight;
  std::vector<double> max_weight;
  double total_mass = 0;

  std::size_t size() const noexcept { return cdf.size(); }

  double mass(std::size_t i) const { return area[i] * mean_weight[i]; }
  double probability(std::size_t i) const { return mass(i) / total_mass; }
};

inline TriangleTable build_table(const Mesh& mesh) {
  const std::size_t n = mesh.triangle_count();
  TriangleTable table;
  table.cdf.resize(n);
  table.area.resize(n);
  table.mean_weight.resize(n);
  table.max_weight.resize(n);

  double running = 0;
  std::size_t last_positive = n;
  for (std::size_t i = 0; i < n; ++i) {
    table.area[i] = triangle_area(mesh, i);
    table.mean_weight[i] = mean_weight(mesh, i);
    table.max_weight[i] = max_weight(mesh, i);
    const double m = table.area[i] * table.mean_weight[i];
    if (m > 0) last_positive = i;
    running += m;
    table.cdf[i] = running;
  }
  if (!(running > 0) || last_positive == n)
    throw Error(ErrorCode::zero_mass, "mesh has no triangle with positive area and weight");

  table.total_mass = running;
  for (auto& c : table.cdf) c /= running;
  // Pin the tail: drift must not leave room past the last sampleable triangle.
  std::fill(table.cdf.begin() + static_cast<std::ptrdiff_t>(last_positive), table.cdf.end(), 1.0);
  return table;
}

// Bisection for the k with cdf[k-1] <= xi < cdf[k] (cdf[-1] taken as 0).
// Ties go to the upper interval, so zero-mass triangles are never chosen.
inline std::size_t choose_triangle(const TriangleTable& table, double xi) {
  MESHSAMPLE_EXPECTS(!table.cdf.empty());
  MESHSAMPLE_EXPECTS(xi >= 0 && xi < 1);
  auto it = std::upper_bound(table.cdf.begin(), table.cdf.end(), xi);
  if (it == table.cdf.end()) --it;
  return static_cast<std::size_t>(it - table.cdf.begin());
}

}  // namespace meshsample
