#pragma once

// Analytic inversion sampling of a point inside a triangle whose density is
// the barycentric interpolation of three non-negative vertex weights.
//
// The in-triangle density depends on the vertex weights only through the
// relative weights
//
//   Phi_u = (phi_u - phi_w) / <phi>,   Phi_v = (phi_v - phi_w) / <phi>,
//
// with <phi> the mean vertex weight. In barycentric measure the density is
//
//   p(u, v) = 2 (u Phi_u + v Phi_v + 1 - (Phi_u + Phi_v) / 3).
//
// u is drawn by Newton inversion of its cubic marginal CDF, then v by closed
// form inversion of the quadratic conditional CDF P(v | u).

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>

#include "meshsample/error.hpp"
#include "meshsample/mesh.hpp"
#include "meshsample/random.hpp"
#include "meshsample/triangle_select.hpp"

namespace meshsample {

struct RelativeWeights {
  double phi_u = 0;
  double phi_v = 0;

  friend bool operator==(const RelativeWeights&, const RelativeWeights&) = default;
};

// Non-negative vertex weights map into the closed triangle with corners
// (3, 0), (0, 3) and (-3, -3).
inline bool in_valid_region(RelativeWeights rw, double slack = 0) {
  return 2 * rw.phi_u - rw.phi_v >= -3 - slack && 2 * rw.phi_v - rw.phi_u >= -3 - slack &&
         rw.phi_u + rw.phi_v <= 3 + slack;
}

struct NewtonConfig {
  double tol = 5.0e-3;    // on the step size |du|
  int max_iter = 20;
  double step_clamp = 0.25;
  double u_init = 0.5;

  void validate() const {
    if (!(tol > 0)) throw Error(ErrorCode::invalid_argument, "newton tol must be > 0");
    if (max_iter < 1) throw Error(ErrorCode::invalid_argument, "newton max_iter must be >= 1");
    if (!(step_clamp > 0 && step_clamp <= 0.5))
      throw Error(ErrorCode::invalid_argument, "newton step_clamp must be in (0, 0.5]");
    if (!(u_init > 0 && u_init < 1))
      throw Error(ErrorCode::invalid_argument, "newton u_init must be in (0, 1)");
  }
};

// Below this |Phi_v| the conditional of v is treated as uniform on [0, 1-u].
inline constexpr double kUniformLimit = 1.0e-6;

inline RelativeWeights relative_weights(double phi_u, double phi_v, double phi_w) {
  if (phi_u == 0 && phi_v == 0 && phi_w == 0)
    throw Error(ErrorCode::all_zero_weights, "relative weights undefined for all-zero weights");
  const double mean = (phi_u + phi_v + phi_w) / 3.0;
  RelativeWeights rw{(phi_u - phi_w) / mean, (phi_v - phi_w) / mean};
  MESHSAMPLE_EXPECTS(in_valid_region(rw, 1e-9));
  return rw;
}

inline RelativeWeights relative_weights(const Mesh& mesh, std::size_t i) {
  const auto w = vertex_weights(mesh, i);
  return relative_weights(w[0], w[1], w[2]);
}

// Inverse of the relative-weight map for a given mean weight:
// returns (phi_u, phi_v, phi_w).
inline std::array<double, 3> vertex_weights_for(RelativeWeights rw, double mean = 1.0) {
  const double phi_w = mean * (1.0 - (rw.phi_u + rw.phi_v) / 3.0);
  return {phi_w + rw.phi_u * mean, phi_w + rw.phi_v * mean, phi_w};
}

namespace detail {
inline double cubic_coefficient(RelativeWeights rw) { return (2.0 * rw.phi_u - rw.phi_v) / 3.0; }
}  // namespace detail

// Marginal CDF of u: u(2 - u) - l u (u - 1)^2 with l = (2 Phi_u - Phi_v) / 3.
inline double marginal_cdf_u(double u, RelativeWeights rw) {
  const double l = detail::cubic_coefficient(rw);
  const double u1 = 1.0 - u;
  return u * (2.0 - u) - l * u * u1 * u1;
}

// dP_U/du = (1 - u)(2 + l (3u - 1)), floored at DBL_EPSILON for Newton.
inline double marginal_cdf_u_deriv(double u, RelativeWeights rw) {
  const double l = detail::cubic_coefficient(rw);
  return std::max((1.0 - u) * (2.0 + l * (3.0 * u - 1.0)), DBL_EPSILON);
}

struct NewtonResult {
  double u = 0;
  int iterations = 0;
};

// Newton solve of P_U(u) = xi_u. Steps are clamped to +-step_clamp, iterates
// to [eps, 1 - eps]; stops once |du| < tol or after max_iter steps, returning
// the last iterate either way.
inline NewtonResult solve_u(double xi_u, RelativeWeights rw, const NewtonConfig& cfg = {}) {
  MESHSAMPLE_EXPECTS(xi_u >= 0 && xi_u < 1);
  const double l = detail::cubic_coefficient(rw);
  double u = cfg.u_init;
  int n = 0;
  while (n < cfg.max_iter) {
    ++n;
    const double u1 = 1.0 - u;
    const double residual = u * (2.0 - u) - l * u * u1 * u1 - xi_u;
    const double slope = std::max(u1 * (2.0 + l * (3.0 * u - 1.0)), DBL_EPSILON);
    const double du = std::clamp(residual / slope, -cfg.step_clamp, cfg.step_clamp);
    u = std::clamp(u - du, DBL_EPSILON, 1.0 - DBL_EPSILON);
    if (std::fabs(du) < cfg.tol) break;
  }
  return {u, n};
}

inline double sample_u(double xi_u, RelativeWeights rw, const NewtonConfig& cfg = {}) {
  return solve_u(xi_u, rw, cfg).u;
}

// tau = 1/3 - (1 + (u - 1/3) Phi_u) / Phi_v. Callers keep |Phi_v| >= kUniformLimit.
inline double tau(double u, RelativeWeights rw) {
  return 1.0 / 3.0 - (1.0 + (u - 1.0 / 3.0) * rw.phi_u) / rw.phi_v;
}

// Root of P(v | u) = xi_v on the branch selected by tau, before clamping:
//   v+ = tau + q  if tau <= (1 - u) / 2
//   v- = tau - q  otherwise
// with q = sqrt(tau^2 (1 - xi_v) + (tau + u - 1)^2 xi_v). Both roots are
// evaluated in rationalized form, (q^2 - tau^2) / (q - tau) and
// (tau^2 - q^2) / (tau + q), using q^2 - tau^2 = xi_v (u - 1)(2 tau + u - 1),
// which avoids cancellation for large |tau| and gives exactly 0 at xi_v = 0.
// q == tau on the v+ branch only happens at xi_v = 0 for valid weights.
inline double solve_v_branch(double xi_v, double u, RelativeWeights rw) {
  const double one_minus_u = 1.0 - u;
  if (std::fabs(rw.phi_v) < kUniformLimit) return one_minus_u * xi_v;
  const double t = tau(u, rw);
  const double s = t - one_minus_u;
  const double q = std::sqrt(t * t * (1.0 - xi_v) + s * s * xi_v);
  const double q2_minus_t2 = -xi_v * one_minus_u * (2.0 * t - one_minus_u);
  if (t <= 0.5 * one_minus_u) {
    const double den = q - t;
    return den > 0 ? q2_minus_t2 / den : 0.0;
  }
  return -q2_minus_t2 / (t + q);
}

inline double sample_v(double xi_v, double u, RelativeWeights rw) {
  MESHSAMPLE_EXPECTS(xi_v >= 0 && xi_v < 1);
  MESHSAMPLE_EXPECTS(u >= 0 && u < 1);
  return std::clamp(solve_v_branch(xi_v, u, rw), 0.0, 1.0 - u);
}

// Draws xi_u then xi_v from `rng` and returns (u, v).
template <DeviateSource S>
std::pair<double, double> sample_in_triangle(RelativeWeights rw, S& rng,
                                             const NewtonConfig& cfg = {}) {
  const double xi_u = rng();
  const double xi_v = rng();
  const double u = sample_u(xi_u, rw, cfg);
  return {u, sample_v(xi_v, u, rw)};
}

// Full point draw: triangle choice, then (u, v). Consumes exactly three
// deviates.
template <DeviateSource S>
BaryPoint sample_point(const TriangleTable& table, const Mesh& mesh, S& rng,
                       const NewtonConfig& cfg = {}) {
  const std::size_t i = choose_triangle(table, rng());
  const auto rw = relative_weights(mesh, i);
  const auto [u, v] = sample_in_triangle(rw, rng, cfg);
  return {i, u, v, bary_to_position(mesh, i, u, v)};
}

}  // namespace meshsample
