#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>

#include "meshsample/error.hpp"
#include "meshsample/mesh.hpp"
#include "meshsample/random.hpp"
#include "meshsample/triangle_select.hpp"

namespace meshsample {

// Uniform point on the unit simplex: u = 1 - sqrt(xi1), v = (1 - u) xi2.
inline std::pair<double, double> sample_uniform_bary(double xi1, double xi2) {
  const double u = 1.0 - std::sqrt(xi1);
  return {u, (1.0 - u) * xi2};
}

struct RejectionConfig {
  std::uint64_t max_trials = 1'000'000;
};

// Running totals over any number of rejection draws.
struct RejectionStats {
  std::uint64_t samples = 0;
  std::uint64_t trials = 0;

  double trials_per_sample() const {
    return samples == 0 ? 0.0 : static_cast<double>(trials) / static_cast<double>(samples);
  }
};

// Rejection sampling against the uniform envelope phi_max for vertex
// weights (phi_u, phi_v, phi_w). Each trial draws xi1, xi2, xi3 and accepts
// iff xi3 * phi_max < phi(u, v).
template <DeviateSource S>
std::pair<double, double> rejection_in_triangle(double phi_u, double phi_v, double phi_w,
                                                double phi_max, S& rng, RejectionStats& stats,
                                                const RejectionConfig& cfg = {}) {
  for (std::uint64_t trial = 1; trial <= cfg.max_trials; ++trial) {
    const double xi1 = rng();
    const double xi2 = rng();
    const auto [u, v] = sample_uniform_bary(xi1, xi2);
    const double xi3 = rng();
    if (xi3 * phi_max < u * phi_u + v * phi_v + (1.0 - u - v) * phi_w) {
      stats.trials += trial;
      ++stats.samples;
      return {u, v};
    }
  }
  throw Error(ErrorCode::iteration_cap,
              "rejection sampler exceeded " + std::to_string(cfg.max_trials) + " trials");
}

template <DeviateSource S>
BaryPoint rejection_sample(const Mesh& mesh, const TriangleTable& table, std::size_t i, S& rng,
                           RejectionStats& stats, const RejectionConfig& cfg = {}) {
  MESHSAMPLE_EXPECTS(i < mesh.triangle_count());
  MESHSAMPLE_EXPECTS(table.mean_weight[i] > 0);
  const auto w = vertex_weights(mesh, i);
  const auto [u, v] = rejection_in_triangle(w[0], w[1], w[2], table.max_weight[i], rng, stats, cfg);
  return {i, u, v, bary_to_position(mesh, i, u, v)};
}

template <DeviateSource S>
BaryPoint rejection_sample(const Mesh& mesh, const TriangleTable& table, std::size_t i, S& rng,
                           const RejectionConfig& cfg = {}) {
  RejectionStats stats;
  return rejection_sample(mesh, table, i, rng, stats, cfg);
}

// Triangle choice followed by rejection sampling inside it.
template <DeviateSource S>
BaryPoint rejection_sample_point(const TriangleTable& table, const Mesh& mesh, S& rng,
                                 RejectionStats& stats, const RejectionConfig& cfg = {}) {
  const std::size_t i = choose_triangle(table, rng());
  return rejection_sample(mesh, table, i, rng, stats, cfg);
}

}  // namespace meshsample
